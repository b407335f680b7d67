//! Requests and their execution, independent of argument parsing.

use std::path::PathBuf;

use orthant_core::enet::enet_path;
use orthant_core::lasso::{adaptive_weights, lasso_path};
use orthant_core::oracle::{all_orthant_path, LambdaGrid, OracleMode, OrthantFit};
use orthant_core::{Dataset, EnetConfig, PenaltyWeights, RegPath, RootSolver};

use crate::error::{Error, Result};
use crate::input::{load_csv, ResponseColumn};
use crate::output::BreakpointTable;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Lasso,
    Adaptive { gamma: f64 },
    ElasticNet { alpha: f64 },
}

/// Where the data comes from and how it is prepared.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSpec {
    pub input: PathBuf,
    pub response: ResponseColumn,
    pub center: bool,
    pub scale: f64,
}

impl DataSpec {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        DataSpec { input: input.into(), response: ResponseColumn::Last, center: true, scale: 1.0 }
    }

    pub fn load(&self) -> Result<Dataset> {
        let raw = load_csv(&self.input, &self.response)?;
        Ok(Dataset::prepare(raw.x, raw.y, self.center, self.scale)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitRequest {
    pub method: Method,
    pub data: DataSpec,
    /// Root tolerance on elastic-net breakpoints.
    pub tol: f64,
    pub solver: RootSolver,
    /// Points per segment in the trajectory file; 0 for none.
    pub trajectory_samples: usize,
}

impl FitRequest {
    pub fn new(method: Method, data: DataSpec) -> Self {
        FitRequest { method, data, tol: EnetConfig::DEFAULT_TOL, solver: RootSolver::default(), trajectory_samples: 0 }
    }
}

fn mode(method: Method, data: &Dataset, tol: f64, solver: RootSolver) -> Result<OracleMode> {
    let gm = data.gram_mask();
    Ok(match method {
        Method::Lasso => OracleMode::Lasso(PenaltyWeights::unit(gm.p())),
        Method::Adaptive { gamma } => OracleMode::Lasso(adaptive_weights(&gm, gamma)?),
        Method::ElasticNet { alpha } => {
            OracleMode::ElasticNet(EnetConfig::new(alpha)?.with_tol(tol)?.with_solver(solver))
        }
    })
}

/// A fitted path together with the data it was fitted on.
#[derive(Debug, Clone)]
pub struct Fit {
    pub data: Dataset,
    pub path: RegPath,
}

impl Fit {
    pub fn table(&self) -> BreakpointTable {
        BreakpointTable::from_path(&self.path)
    }
}

pub fn run_fit(req: &FitRequest) -> Result<Fit> {
    let data = req.data.load()?;
    let gm = data.gram_mask();
    let path = match mode(req.method, &data, req.tol, req.solver)? {
        OracleMode::Lasso(w) => lasso_path(&gm, &w)?,
        OracleMode::ElasticNet(cfg) => enet_path(&gm, &cfg)?,
    };
    Ok(Fit { data, path })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRequest {
    pub method: Method,
    pub data: DataSpec,
    pub grid: LambdaGrid,
    pub max_dim: usize,
}

pub fn run_oracle(req: &OracleRequest) -> Result<(Dataset, Vec<OrthantFit>)> {
    let data = req.data.load()?;
    let m = mode(req.method, &data, EnetConfig::DEFAULT_TOL, RootSolver::default())?;
    let fits = all_orthant_path(&data.gram_mask(), &req.grid, &m, req.max_dim)?;
    Ok((data, fits))
}

/// `start:stop:step`, stop inclusive.
pub fn parse_grid(spec: &str) -> Result<LambdaGrid> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(Error::Usage(format!("grid {spec:?} is not start:stop:step")));
    };
    let f = |s: &str| s.trim().parse::<f64>().map_err(|_| Error::Usage(format!("grid value {s:?} is not a number")));
    Ok(LambdaGrid::stepped(f(start)?, f(stop)?, f(step)?)?)
}

pub fn parse_grid_list(spec: &str) -> Result<LambdaGrid> {
    let values = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Usage(format!("grid value {s:?} is not a number"))))
        .collect::<Result<Vec<f64>>>()?;
    Ok(LambdaGrid::new(values)?)
}
