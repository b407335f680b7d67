//! CSV input and output and a command-line driver for the path solvers in
//! `orthant-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod input;
pub mod output;
pub mod run;

pub use error::{Error, Result};
pub use input::{load_csv, read_csv, RawData, ResponseColumn};
pub use output::{write_oracle, write_trajectory, BreakpointRow, BreakpointTable};
pub use run::{run_fit, run_oracle, DataSpec, Fit, FitRequest, Method, OracleRequest};
