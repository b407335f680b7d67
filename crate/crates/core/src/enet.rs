//! Exact elastic-net paths.
//!
//! With `S(λ) = C·XᵀX·C + λ(1−α)·C²` the per-orthant minimizer is
//!
//! ```text
//! C²û(λ) = S(λ)⁻·(C·XᵀY − αλ·C²·1)
//! ```
//!
//! which is rational rather than affine in `λ`. A coordinate leaves the
//! orthant at a root of `fᵢ(λ) = (C²û(λ))ᵢ`, located by scanning for a sign
//! change above the current `λ` and refining with bisection or secant.
//!
//! Plain fixed-point iteration of `λ = (S(λ)⁻CXᵀY)ᵢ / (α(S(λ)⁻C²1)ᵢ)` and
//! Newton's method on `fᵢ` are deliberately not offered: both can wander
//! outside `[0, max|XᵀY|/α]`.

use alloc::vec::Vec;

use crate::data::{Dataset, GramMask};
use crate::error::{Error, Result};
use crate::linalg::{apply_sign, dot, ridge_shift, MaskedInverse, OrthantSign};
use crate::path::{trace, Evaluation, MoveEvaluator, MoveRecord, PathKind, RegPath, ShrinkCandidate, Verdict};
use crate::roots::{bisect, first_sign_change, scan_grid, secant, Bracket};

/// Evenly spaced points scanned for the first sign change of a breakpoint
/// function.
pub const SCAN_POINTS: usize = 64;

/// Geometrically spaced points added near the lower end of the scan.
pub const SCAN_POINTS_NEAR: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootSolver {
    #[default]
    Bisection,
    /// Secant steps, falling back to bisection when a step leaves the bracket.
    Secant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnetConfig {
    pub alpha: f64,
    /// Absolute tolerance on breakpoint `λ` values.
    pub tol: f64,
    pub solver: RootSolver,
    pub max_iters: usize,
}

impl EnetConfig {
    pub const DEFAULT_TOL: f64 = 1e-8;
    pub const DEFAULT_MAX_ITERS: usize = 200;

    pub fn new(alpha: f64) -> Result<Self> {
        EnetConfig { alpha, tol: Self::DEFAULT_TOL, solver: RootSolver::Bisection, max_iters: Self::DEFAULT_MAX_ITERS }
            .validated()
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        EnetConfig { tol, ..self }.validated()
    }

    pub fn with_solver(self, solver: RootSolver) -> Self {
        EnetConfig { solver, ..self }
    }

    pub fn with_max_iters(self, max_iters: usize) -> Result<Self> {
        EnetConfig { max_iters, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidParameter("tol must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be at least 1"));
        }
        Ok(self)
    }
}

/// `max |(XᵀY)ᵢ| / α`, where the whole elastic-net path is zero.
pub fn lambda_max_enet(gm: &GramMask, alpha: f64) -> f64 {
    gm.xty().iter().fold(0.0_f64, |m, a| m.max(a.abs())) / alpha
}

/// `C²·1`
fn active_ones(c: &OrthantSign) -> Vec<f64> {
    c.signs().iter().map(|&s| if s == 0 { 0.0 } else { 1.0 }).collect()
}

fn ridge_inverse(c: &OrthantSign, lambda: f64, gm: &GramMask, cfg: &EnetConfig) -> Result<MaskedInverse> {
    MaskedInverse::new(gm.gram(), c, ridge_shift(lambda, cfg.alpha)?)
}

/// `C·XᵀY − αλ·C²·1`
fn rhs(c: &OrthantSign, lambda: f64, gm: &GramMask, alpha: f64) -> Result<Vec<f64>> {
    Ok(apply_sign(c, gm.xty())?.iter().zip(active_ones(c)).map(|(b, d)| b - alpha * lambda * d).collect())
}

/// `C²û = S(λ)⁻·(C·XᵀY − αλ·C²·1)`.
pub fn c2u_enet(c: &OrthantSign, lambda: f64, gm: &GramMask, cfg: &EnetConfig) -> Result<Vec<f64>> {
    ridge_inverse(c, lambda, gm, cfg)?.apply(&rhs(c, lambda, gm, cfg.alpha)?)
}

/// `β̂ = C·S(λ)⁻·C·(XᵀY − αλ·C·1)`, the elastic-net trajectory through `c`.
pub fn beta_hat_enet(c: &OrthantSign, lambda: f64, gm: &GramMask, cfg: &EnetConfig) -> Result<Vec<f64>> {
    apply_sign(c, &c2u_enet(c, lambda, gm, cfg)?)
}

/// `½‖Y − Xβ‖² + λα‖β‖₁ + λ(1−α)/2·‖β‖₂²`, evaluated directly on the data.
pub fn criterion_e(data: &Dataset, lambda: f64, alpha: f64, beta: &[f64]) -> f64 {
    let fit = data.x().mul_vec(beta).expect("beta has length p");
    let rss: f64 = data.y().iter().zip(&fit).map(|(y, f)| (y - f) * (y - f)).sum();
    0.5 * rss + penalty(lambda, alpha, beta)
}

fn penalty(lambda: f64, alpha: f64, beta: &[f64]) -> f64 {
    let l1: f64 = beta.iter().map(|b| b.abs()).sum();
    lambda * alpha * l1 + 0.5 * lambda * (1.0 - alpha) * dot(beta, beta)
}

fn criterion_gram(gm: &GramMask, lambda: f64, alpha: f64, beta: &[f64]) -> f64 {
    gm.half_rss(beta) + penalty(lambda, alpha, beta)
}

/// Optimal criterion within orthant `c` in closed form,
/// `Ê_C = ½(YᵀY − rᵀ·S(λ)⁻·r)` with `r = C·XᵀY − αλ·C²·1`.
pub fn criterion_ehat(c: &OrthantSign, lambda: f64, gm: &GramMask, cfg: &EnetConfig) -> Result<f64> {
    let r = rhs(c, lambda, gm, cfg.alpha)?;
    let sr = ridge_inverse(c, lambda, gm, cfg)?.apply(&r)?;
    Ok(0.5 * (gm.yty() - dot(&r, &sr)))
}

/// `fᵢ(λ) = (C²û(λ))ᵢ`; a root is a candidate exit point for coordinate `i`.
pub fn breakpoint_function(c: &OrthantSign, i: usize, lambda: f64, gm: &GramMask, cfg: &EnetConfig) -> Result<f64> {
    if c.get(i) == 0 {
        return Err(Error::InvalidParameter("breakpoint coordinate must be active"));
    }
    let inv = ridge_inverse(c, lambda, gm, cfg)?;
    Ok(inv.apply(&rhs(c, lambda, gm, cfg.alpha)?)?[i])
}

/// First root of `fᵢ` in `[lo, hi]`, or `None` without a sign change.
pub(crate) fn first_root(
    c: &OrthantSign,
    i: usize,
    lo: f64,
    hi: f64,
    gm: &GramMask,
    cfg: &EnetConfig,
) -> Result<Option<f64>> {
    if !(lo < hi) {
        return Ok(None);
    }
    let f = |lambda: f64| breakpoint_function(c, i, lambda, gm, cfg);
    let Some(bracket): Option<Bracket> = first_sign_change(f, &scan_grid(lo, hi, SCAN_POINTS, SCAN_POINTS_NEAR))?
    else {
        return Ok(None);
    };
    let root = match cfg.solver {
        RootSolver::Bisection => bisect(f, bracket, cfg.tol, cfg.max_iters)?,
        RootSolver::Secant => secant(f, bracket, cfg.tol, cfg.max_iters)?,
    };
    Ok(Some(root))
}

/// Margin above the current `λ` inside which roots are treated as the
/// current breakpoint itself; it must exceed the root-solver error.
fn current_margin(lambda_current: f64, cfg: &EnetConfig) -> f64 {
    1e-12 * (1.0 + lambda_current) + 4.0 * cfg.tol
}

fn evaluate(
    c_prime: &OrthantSign,
    i: usize,
    lambda_current: f64,
    gm: &GramMask,
    cfg: &EnetConfig,
) -> Result<Evaluation> {
    if c_prime.get(i) == 0 {
        return Err(Error::InvalidParameter("shrink coordinate must be active"));
    }
    let lambda_max = lambda_max_enet(gm, cfg.alpha);
    // Widened slightly so a root sitting exactly on λ_max is bracketed.
    let hi = lambda_max * (1.0 + 1e-9) + 1e-12;
    let lo = lambda_current + current_margin(lambda_current, cfg);
    let Some(root) = first_root(c_prime, i, lo, hi, gm, cfg)? else {
        return Ok(Evaluation::Rejected { lambda_hat: None, verdict: Verdict::NoRoot });
    };
    let lambda_hat = root.min(lambda_max);
    let tau = gm.sign_tolerance();
    let mut c2u = c2u_enet(c_prime, lambda_hat, gm, cfg)?;
    c2u[i] = 0.0;
    if c2u.iter().any(|&v| v < -tau) {
        return Ok(Evaluation::Rejected { lambda_hat: Some(lambda_hat), verdict: Verdict::NegativeEntries });
    }
    c2u.iter_mut().filter(|v| v.abs() <= tau).for_each(|v| *v = 0.0);
    let beta_hat = apply_sign(c_prime, &c2u)?;
    Ok(Evaluation::Valid(ShrinkCandidate {
        lambda_hat,
        criterion: criterion_gram(gm, lambda_hat, cfg.alpha, &beta_hat),
        beta_hat,
        orthant_from: c_prime.clone(),
        coordinate: i,
    }))
}

/// Elastic-net shrinkage step: solves `fᵢ(λ) = 0` on
/// `(lambda_current, max|XᵀY|/α]` and screens the root like the lasso step.
pub fn solve_breakpoint(
    c: &OrthantSign,
    i: usize,
    lambda_current: f64,
    gm: &GramMask,
    cfg: &EnetConfig,
) -> Result<Option<ShrinkCandidate>> {
    Ok(match evaluate(c, i, lambda_current, gm, cfg)? {
        Evaluation::Valid(cand) => Some(cand),
        Evaluation::Rejected { .. } => None,
    })
}

struct EnetEvaluator<'a> {
    gm: &'a GramMask,
    cfg: &'a EnetConfig,
}

impl MoveEvaluator for EnetEvaluator<'_> {
    fn evaluate(&mut self, c_prime: &OrthantSign, i: usize, lambda_current: f64) -> Result<Evaluation> {
        evaluate(c_prime, i, lambda_current, self.gm, self.cfg)
    }

    fn criterion(&self, lambda: f64, beta: &[f64]) -> f64 {
        criterion_gram(self.gm, lambda, self.cfg.alpha, beta)
    }

    fn c2u(&mut self, c: &OrthantSign, lambda: f64) -> Result<Vec<f64>> {
        c2u_enet(c, lambda, self.gm, self.cfg)
    }

    fn penalty(&self, lambda: f64, _j: usize) -> f64 {
        lambda * self.cfg.alpha
    }

    fn root_tolerance(&self) -> f64 {
        self.cfg.tol
    }
}

/// Exact elastic-net path from the least-squares fit to `max|XᵀY|/α`.
pub fn enet_path(gm: &GramMask, cfg: &EnetConfig) -> Result<RegPath> {
    enet_path_traced(gm, cfg, &mut |_| {})
}

pub fn enet_path_traced(gm: &GramMask, cfg: &EnetConfig, observer: &mut dyn FnMut(&MoveRecord)) -> Result<RegPath> {
    let cfg = cfg.validated()?;
    let mut ev = EnetEvaluator { gm, cfg: &cfg };
    trace(gm, PathKind::ElasticNet(cfg), &mut ev, observer)
}
