//! Argument parsing and dispatch for the `orthant` binary.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use orthant_core::oracle::DEFAULT_DIMENSION_CAP;
use orthant_core::{Dataset, EnetConfig, RootSolver};

use crate::error::{Error, Result};
use crate::input::ResponseColumn;
use crate::output::{write_oracle, write_trajectory};
use crate::run::{parse_grid, parse_grid_list, run_fit, run_oracle, DataSpec, FitRequest, Method, OracleRequest};

#[derive(Debug, Parser)]
#[command(name = "orthant", version, about = "Exact lasso, adaptive lasso and elastic net regularization paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trace the full regularization path and write its breakpoints.
    Fit(FitArgs),
    /// Solve on a grid of lambda values by checking every orthant.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Lasso,
    Adaptive,
    Enet,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolverArg {
    Bisection,
    Secant,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV file with a header row.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Response column, by header name or 1-based index. Defaults to the last column.
    #[arg(long, value_name = "COL")]
    response: Option<ResponseColumn>,
    /// Use the data as given instead of centering it.
    #[arg(long)]
    no_center: bool,
    /// Divide every entry by K after centering.
    #[arg(long, value_name = "K", default_value_t = 1.0)]
    scale: f64,
}

#[derive(Debug, Args)]
struct MethodArgs {
    #[arg(long, value_enum, default_value = "lasso")]
    method: MethodArg,
    /// Exponent for adaptive weights |β_ols|^-γ.
    #[arg(long, value_name = "G")]
    gamma: Option<f64>,
    /// Elastic net mixing, 0 < A <= 1.
    #[arg(long, value_name = "A")]
    alpha: Option<f64>,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    input: InputArgs,
    /// Root tolerance for elastic net breakpoints.
    #[arg(long, value_name = "T", default_value_t = EnetConfig::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "bisection")]
    solver: SolverArg,
    /// Also write N samples per segment (50 if N is omitted).
    #[arg(long, value_name = "N", num_args = 0..=1, default_missing_value = "50")]
    trajectory: Option<usize>,
    /// Trajectory file. Defaults to the output path with a .trajectory.csv extension.
    #[arg(long, value_name = "PATH")]
    trajectory_output: Option<PathBuf>,
    /// Breakpoint table destination; standard output if omitted.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("lambdas").required(true))]
struct OracleArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    input: InputArgs,
    /// Evenly stepped grid, stop inclusive.
    #[arg(long, value_name = "START:STOP:STEP", group = "lambdas", allow_hyphen_values = true)]
    grid: Option<String>,
    /// Explicit increasing grid.
    #[arg(long, value_name = "V1,V2,...", group = "lambdas")]
    grid_list: Option<String>,
    /// Refuse problems with more predictors than this.
    #[arg(long, value_name = "P", default_value_t = DEFAULT_DIMENSION_CAP)]
    max_dim: usize,
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

impl MethodArgs {
    fn resolve(&self) -> Result<Method> {
        let stray = |flag: &str| Err(Error::Usage(format!("{flag} does not apply to --method {:?}", self.method)));
        match self.method {
            MethodArg::Lasso if self.gamma.is_some() => stray("--gamma"),
            MethodArg::Lasso if self.alpha.is_some() => stray("--alpha"),
            MethodArg::Lasso => Ok(Method::Lasso),
            MethodArg::Adaptive if self.alpha.is_some() => stray("--alpha"),
            MethodArg::Adaptive => match self.gamma {
                Some(gamma) if gamma >= 0.0 && gamma.is_finite() => Ok(Method::Adaptive { gamma }),
                Some(gamma) => Err(Error::Usage(format!("--gamma must be nonnegative, got {gamma}"))),
                None => Err(Error::Usage("--method adaptive needs --gamma".into())),
            },
            MethodArg::Enet if self.gamma.is_some() => stray("--gamma"),
            MethodArg::Enet => match self.alpha {
                Some(alpha) if alpha > 0.0 && alpha <= 1.0 => Ok(Method::ElasticNet { alpha }),
                Some(alpha) => Err(Error::Usage(format!("--alpha must lie in (0, 1], got {alpha}"))),
                None => Err(Error::Usage("--method enet needs --alpha".into())),
            },
        }
    }
}

impl InputArgs {
    fn spec(&self) -> Result<DataSpec> {
        if !(self.scale > 0.0) || !self.scale.is_finite() {
            return Err(Error::Usage(format!("--scale must be positive, got {}", self.scale)));
        }
        Ok(DataSpec {
            input: self.input.clone(),
            response: self.response.clone().unwrap_or_default(),
            center: !self.no_center,
            scale: self.scale,
        })
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?))
}

fn notices(data: &Dataset, err: &mut dyn Write) {
    // Diagnostics only; a closed stderr is not worth failing over.
    if data.had_nonzero_means() {
        let _ = writeln!(err, "note: input columns had nonzero means and were centered");
    } else if !data.centered() && !data.is_mean_zero() {
        let _ = writeln!(err, "warning: input is not centered and the model has no intercept");
    }
}

fn with_output(path: Option<&Path>, out: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut file = create(p)?;
            f(&mut file)?;
            file.flush().map_err(|e| Error::io(p, e))
        }
        None => f(out),
    }
}

fn fit(args: &FitArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let method = args.method.resolve()?;
    let samples = args.trajectory.unwrap_or(0);
    let trajectory_path = match (samples, &args.trajectory_output, &args.output) {
        (0, _, _) => None,
        (_, Some(p), _) => Some(p.clone()),
        (_, None, Some(o)) => Some(o.with_extension("trajectory.csv")),
        (_, None, None) => {
            return Err(Error::Usage("--trajectory with standard output needs --trajectory-output".into()))
        }
    };
    let req = FitRequest {
        method,
        data: args.input.spec()?,
        tol: args.tol,
        solver: match args.solver {
            SolverArg::Bisection => RootSolver::Bisection,
            SolverArg::Secant => RootSolver::Secant,
        },
        trajectory_samples: samples,
    };
    let fit = run_fit(&req)?;
    notices(&fit.data, err);
    with_output(args.output.as_deref(), out, |w| fit.table().write(w))?;
    if let Some(p) = trajectory_path {
        let mut file = create(&p)?;
        write_trajectory(&fit.path, &fit.data.gram_mask(), samples, &mut file)?;
        file.flush().map_err(|e| Error::io(&p, e))?;
    }
    Ok(())
}

fn oracle(args: &OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let grid = match (&args.grid, &args.grid_list) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(l)) => parse_grid_list(l)?,
        (None, None) => unreachable!("clap requires one of the grid flags"),
    };
    let req = OracleRequest { method: args.method.resolve()?, data: args.input.spec()?, grid, max_dim: args.max_dim };
    let (data, fits) = run_oracle(&req)?;
    notices(&data, err);
    with_output(args.output.as_deref(), out, |w| write_oracle(&fits, w))
}

/// Runs one invocation and returns the process exit code: 0 on success,
/// 1 for usage errors, 2 for data errors, 3 for numerical failures.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 1;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let result = match &cli.command {
        Command::Fit(a) => fit(a, out, err),
        Command::Oracle(a) => oracle(a, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
