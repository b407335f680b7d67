//! Exhaustive all-orthant solver.
//!
//! For a fixed `λ`, evaluates the closed-form minimizer in each of the `3^p`
//! orthants, discards those whose `C²û` has a negative entry (the minimizer
//! lies outside the orthant) and keeps the one with the smallest optimal
//! criterion. Cost is `3^p` small solves per `λ`, so `p` is capped.

use alloc::vec::Vec;

use crate::data::GramMask;
use crate::enet::{c2u_enet, criterion_ehat, first_root, lambda_max_enet, EnetConfig};
use crate::error::{Error, Result};
use crate::lasso::{c2u_lasso, criterion_lhat, PenaltyWeights, ShrinkLine};
use crate::linalg::{apply_sign, OrthantSign};

pub const DEFAULT_DIMENSION_CAP: usize = 14;

/// Relative width within which two orthant criteria are considered tied.
const CRITERION_TIE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleMode {
    Lasso(PenaltyWeights),
    ElasticNet(EnetConfig),
}

/// Strictly increasing, nonnegative `λ` values.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid(Vec<f64>);

impl LambdaGrid {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("lambda grid is empty"));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidParameter("lambda grid values must be finite and nonnegative"));
        }
        if values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("lambda grid must be strictly increasing"));
        }
        Ok(LambdaGrid(values))
    }

    /// `start, start + step, …` up to `stop` inclusive (within rounding).
    pub fn stepped(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(stop >= start) {
            return Err(Error::InvalidParameter("grid needs step > 0 and stop >= start"));
        }
        let count = libm::floor((stop - start) / step + 1e-9) as usize + 1;
        Self::new((0..count).map(|k| start + k as f64 * step).collect())
    }

    /// `points` evenly spaced values over `[start, stop]`, endpoints included.
    pub fn linspace(start: f64, stop: f64, points: usize) -> Result<Self> {
        match points {
            0 => Err(Error::InvalidParameter("lambda grid is empty")),
            1 => Self::new(alloc::vec![start]),
            _ => {
                Self::new(
                    (0..points)
                        .map(|k| {
                            if k + 1 == points {
                                stop
                            } else {
                                start + (stop - start) * k as f64 / (points - 1) as f64
                            }
                        })
                        .collect(),
                )
            }
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthantFit {
    pub lambda: f64,
    pub orthant: OrthantSign,
    pub beta: Vec<f64>,
    pub criterion: f64,
    /// Every entry of `C²û` is at least `−τ`.
    pub valid: bool,
}

fn check_cap(p: usize, cap: usize) -> Result<()> {
    if p > cap {
        Err(Error::DimensionCap { p, cap })
    } else {
        Ok(())
    }
}

/// Closed-form minimizer and optimal criterion within one orthant.
pub fn evaluate_orthant(gm: &GramMask, c: &OrthantSign, lambda: f64, mode: &OracleMode) -> Result<OrthantFit> {
    let (c2u, criterion) = match mode {
        OracleMode::Lasso(w) => (c2u_lasso(c, lambda, gm, w)?, criterion_lhat(c, lambda, gm, w)?),
        OracleMode::ElasticNet(cfg) => (c2u_enet(c, lambda, gm, cfg)?, criterion_ehat(c, lambda, gm, cfg)?),
    };
    let tau = gm.sign_tolerance();
    Ok(OrthantFit {
        lambda,
        orthant: c.clone(),
        valid: c2u.iter().all(|&v| v >= -tau),
        beta: apply_sign(c, &c2u)?,
        criterion,
    })
}

/// True when `a` should replace the incumbent `b`: smaller criterion, then
/// fewer nonzero signs. Equal candidates keep the earlier (lexicographic) one.
fn preferred(a: &OrthantFit, b: &OrthantFit) -> bool {
    let scale = 1.0 + a.criterion.abs().max(b.criterion.abs());
    if (a.criterion - b.criterion).abs() > CRITERION_TIE * scale {
        return a.criterion < b.criterion;
    }
    a.orthant.nonzero_count() < b.orthant.nonzero_count()
}

/// Criterion-minimizing valid orthant at `lambda`.
pub fn all_orthant_fit(gm: &GramMask, lambda: f64, mode: &OracleMode, cap: usize) -> Result<OrthantFit> {
    let p = gm.p();
    check_cap(p, cap)?;
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be finite and nonnegative"));
    }
    let mut best: Option<OrthantFit> = None;
    for c in OrthantSign::enumerate(p) {
        let fit = evaluate_orthant(gm, &c, lambda, mode)?;
        if !fit.valid {
            continue;
        }
        if best.as_ref().is_none_or(|b| preferred(&fit, b)) {
            best = Some(fit);
        }
    }
    // The origin is always valid, so some orthant survives screening.
    Ok(best.expect("the all-zero orthant is always valid"))
}

pub fn all_orthant_path(gm: &GramMask, grid: &LambdaGrid, mode: &OracleMode, cap: usize) -> Result<Vec<OrthantFit>> {
    check_cap(gm.p(), cap)?;
    grid.values().iter().map(|&lambda| all_orthant_fit(gm, lambda, mode, cap)).collect()
}

/// A shrink from `from` to `to` (coordinate `coordinate` zeroed) that passes
/// screening at `λ = lambda >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidMove {
    pub from: OrthantSign,
    pub to: OrthantSign,
    pub coordinate: usize,
    pub lambda: f64,
}

/// Every orthant/coordinate shrink with a nonnegative `λ̂` and nonnegative
/// `C²û` at `λ̂`, in orthant enumeration order.
pub fn enumerate_valid_moves(gm: &GramMask, mode: &OracleMode, cap: usize) -> Result<Vec<ValidMove>> {
    let p = gm.p();
    check_cap(p, cap)?;
    let tau = gm.sign_tolerance();
    let mut moves = Vec::new();
    for c in OrthantSign::enumerate(p) {
        let active = c.active_indices();
        if active.is_empty() {
            continue;
        }
        match mode {
            OracleMode::Lasso(w) => {
                let line = ShrinkLine::new(&c, gm, w)?;
                for &i in &active {
                    let Some(lambda) = line.crossing(i) else { continue };
                    if lambda < 0.0 {
                        continue;
                    }
                    let mut c2u = line.at(lambda);
                    c2u[i] = 0.0;
                    if c2u.iter().all(|&v| v >= -tau) {
                        moves.push(ValidMove { from: c.clone(), to: c.with(i, 0), coordinate: i, lambda });
                    }
                }
            }
            OracleMode::ElasticNet(cfg) => {
                let hi = lambda_max_enet(gm, cfg.alpha) * (1.0 + 1e-9) + 1e-12;
                for &i in &active {
                    let Some(lambda) = first_root(&c, i, 0.0, hi, gm, cfg)? else { continue };
                    let mut c2u = c2u_enet(&c, lambda, gm, cfg)?;
                    c2u[i] = 0.0;
                    if c2u.iter().all(|&v| v >= -tau) {
                        moves.push(ValidMove { from: c.clone(), to: c.with(i, 0), coordinate: i, lambda });
                    }
                }
            }
        }
    }
    Ok(moves)
}
