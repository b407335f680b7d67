//! Exact regularization paths for the lasso, the adaptive lasso and the
//! elastic net, computed by splitting parameter space into orthants.
//!
//! Inside an orthant `β = C·u` with `C` a diagonal matrix of signs and `u`
//! positive, the penalized least-squares criterion is an ordinary quadratic
//! form with a closed-form minimizer. The path is traced as a sequence of
//! orthant moves:
//!
//! * a *shrinkage* move drives one active coefficient to zero;
//! * a *reactivation* move switches a zero coefficient back on, tested by
//!   shrinking from both sign extensions of the zero entry.
//!
//! The lasso path is piecewise linear and every breakpoint has a closed form.
//! For the elastic net each breakpoint is the root of a smooth scalar
//! function, found by bracketing and bisection (or secant).
//!
//! The [`oracle`] module evaluates every one of the `3^p` orthants at a given
//! `λ` and serves as a ground truth for the sequential tracers.
//!
//! ```
//! use orthant_core::{Dataset, Matrix, PenaltyWeights, lasso::lasso_path};
//!
//! // Single centered predictor: the path is (−14 + λ)/20 until λ = 14.
//! let x = Matrix::from_rows(&[
//!     &[0.0], &[-1.0], &[0.0], &[-1.0], &[-1.0], &[-1.0], &[4.0],
//! ]).unwrap();
//! let y = vec![1.0, 1.0, 0.0, -1.0, 1.0, 1.0, -3.0];
//! let data = Dataset::new(x, y).unwrap();
//! let gm = data.gram_mask();
//! let path = lasso_path(&gm, &PenaltyWeights::unit(1)).unwrap();
//! assert_eq!(path.breakpoints().len(), 2);
//! assert!((path.breakpoints()[1].lambda - 14.0).abs() < 1e-12);
//! ```
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod data;
pub mod enet;
pub mod error;
pub mod lasso;
pub mod linalg;
pub mod oracle;
pub mod path;
pub mod roots;

pub use data::{Dataset, GramMask};
pub use enet::{EnetConfig, RootSolver};
pub use error::{Error, Result};
pub use lasso::PenaltyWeights;
pub use linalg::{Matrix, OrthantSign};
pub use path::{PathBreakpoint, PathKind, RegPath, ShrinkCandidate};
