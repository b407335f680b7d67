//! Exact lasso and adaptive-lasso paths.
//!
//! Inside orthant `C` the minimizer of the lasso criterion satisfies
//!
//! ```text
//! C²û = S⁻·(C·XᵀY − λ·C²·w),    β̂ = C·S⁻·C·(XᵀY − λ·C·w)
//! ```
//!
//! with `S = C·XᵀX·C` and `w` the penalty weights (all ones for the plain
//! lasso). Each coordinate of `C²û` is affine in `λ` and crosses zero at
//!
//! ```text
//! λ*ᵢ = (S⁻·C·XᵀY)ᵢ / (S⁻·C²·w)ᵢ
//! ```
//!
//! which is the only candidate breakpoint for that coordinate.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::data::{Dataset, GramMask};
use crate::error::{Error, Result};
use crate::linalg::{apply_sign, dot, max_abs, spd_solve, MaskedInverse, OrthantSign};
use crate::path::{trace, Evaluation, MoveEvaluator, MoveRecord, PathKind, RegPath, ShrinkCandidate, Verdict};

/// OLS magnitudes below this make adaptive weights infinite.
pub const ZERO_OLS_TOLERANCE: f64 = 1e-12;

/// Per-coordinate L1 penalty weights.
#[derive(Debug, Clone, PartialEq)]
pub struct PenaltyWeights {
    w: Vec<f64>,
    gamma: Option<f64>,
}

impl PenaltyWeights {
    pub fn unit(p: usize) -> Self {
        PenaltyWeights { w: alloc::vec![1.0; p], gamma: None }
    }

    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidParameter("penalty weights must be positive and finite"));
        }
        Ok(PenaltyWeights { w, gamma: None })
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// The exponent used when the weights came from [`adaptive_weights`].
    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    fn check(&self, p: usize) -> Result<()> {
        if self.w.len() != p {
            return Err(Error::DimensionMismatch { expected: p, found: self.w.len() });
        }
        Ok(())
    }
}

/// Least-squares coefficients `(XᵀX)⁻¹XᵀY`.
pub fn ols_fit(gm: &GramMask) -> Result<Vec<f64>> {
    spd_solve(gm.gram(), gm.xty())
}

/// Adaptive-lasso weights `wᵢ = |β̂ᵢ^OLS|^(−γ)`.
pub fn adaptive_weights(gm: &GramMask, gamma: f64) -> Result<PenaltyWeights> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter("gamma must be finite and nonnegative"));
    }
    let ols = ols_fit(gm)?;
    if let Some(index) = ols.iter().position(|b| b.abs() < ZERO_OLS_TOLERANCE) {
        return Err(Error::ZeroOlsCoefficient { index });
    }
    let w = ols.iter().map(|b| libm::pow(b.abs(), -gamma)).collect();
    Ok(PenaltyWeights { w, gamma: Some(gamma) })
}

/// Smallest `λ` at which every coefficient is zero: `maxᵢ |(XᵀY)ᵢ| / wᵢ`.
pub fn lambda_max_lasso(gm: &GramMask, w: &PenaltyWeights) -> f64 {
    gm.xty().iter().zip(&w.w).fold(0.0, |m, (a, wi)| m.max(a.abs() / wi))
}

/// `C²·w`.
fn masked_weights(c: &OrthantSign, w: &PenaltyWeights) -> Vec<f64> {
    c.signs().iter().zip(&w.w).map(|(&s, &wi)| if s == 0 { 0.0 } else { wi }).collect()
}

/// The line `C²û(λ) = start − λ·direction` for one orthant.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrinkLine {
    /// `S⁻·C·XᵀY`
    pub start: Vec<f64>,
    /// `S⁻·C²·w`
    pub direction: Vec<f64>,
}

impl ShrinkLine {
    pub fn new(c: &OrthantSign, gm: &GramMask, w: &PenaltyWeights) -> Result<Self> {
        w.check(gm.p())?;
        let inv = MaskedInverse::new(gm.gram(), c, 0.0)?;
        Ok(ShrinkLine { start: inv.apply(&apply_sign(c, gm.xty())?)?, direction: inv.apply(&masked_weights(c, w))? })
    }

    pub fn at(&self, lambda: f64) -> Vec<f64> {
        self.start.iter().zip(&self.direction).map(|(s, d)| s - lambda * d).collect()
    }

    /// `λ*ᵢ`, or `None` when the denominator vanishes.
    pub fn crossing(&self, i: usize) -> Option<f64> {
        let den = self.direction[i];
        if den.abs() <= f64::EPSILON * max_abs(&self.direction) || den == 0.0 {
            None
        } else {
            Some(self.start[i] / den)
        }
    }
}

/// `C²û = S⁻·(C·XᵀY − λ·C²·w)`.
pub fn c2u_lasso(c: &OrthantSign, lambda: f64, gm: &GramMask, w: &PenaltyWeights) -> Result<Vec<f64>> {
    w.check(gm.p())?;
    let inv = MaskedInverse::new(gm.gram(), c, 0.0)?;
    let rhs: Vec<f64> =
        apply_sign(c, gm.xty())?.iter().zip(masked_weights(c, w)).map(|(a, d)| a - lambda * d).collect();
    inv.apply(&rhs)
}

/// `β̂ = C·S⁻·C·(XᵀY − λ·C·w)`, the lasso trajectory through orthant `c`.
pub fn beta_hat_lasso(c: &OrthantSign, lambda: f64, gm: &GramMask, w: &PenaltyWeights) -> Result<Vec<f64>> {
    apply_sign(c, &c2u_lasso(c, lambda, gm, w)?)
}

/// `½‖Y − Xβ‖² + λ·Σ wⱼ|βⱼ|`, evaluated directly on the data.
pub fn criterion_l(data: &Dataset, lambda: f64, beta: &[f64], w: &PenaltyWeights) -> f64 {
    let fit = data.x().mul_vec(beta).expect("beta has length p");
    let rss: f64 = data.y().iter().zip(&fit).map(|(y, f)| (y - f) * (y - f)).sum();
    0.5 * rss + lambda * weighted_l1(beta, w)
}

fn weighted_l1(beta: &[f64], w: &PenaltyWeights) -> f64 {
    beta.iter().zip(&w.w).map(|(b, wi)| wi * b.abs()).sum()
}

/// Optimal criterion within orthant `c`, a quadratic in `λ`:
///
/// ```text
/// L̂_C = ½(YᵀY − bᵀS⁻b + 2λ·bᵀS⁻d − λ²·dᵀS⁻d),   b = C·XᵀY, d = C²·w
/// ```
pub fn criterion_lhat(c: &OrthantSign, lambda: f64, gm: &GramMask, w: &PenaltyWeights) -> Result<f64> {
    w.check(gm.p())?;
    let inv = MaskedInverse::new(gm.gram(), c, 0.0)?;
    let b = apply_sign(c, gm.xty())?;
    let d = masked_weights(c, w);
    let sb = inv.apply(&b)?;
    let sd = inv.apply(&d)?;
    Ok(0.5 * (gm.yty() - dot(&b, &sb) + 2.0 * lambda * dot(&b, &sd) - lambda * lambda * dot(&d, &sd)))
}

/// Criterion through the cached Gram quantities.
fn criterion_gram(gm: &GramMask, lambda: f64, beta: &[f64], w: &PenaltyWeights) -> f64 {
    gm.half_rss(beta) + lambda * weighted_l1(beta, w)
}

/// Shrinkage step for coordinate `i` of orthant `c_prime`.
///
/// Returns `None` when the denominator vanishes, `λ*ᵢ` does not exceed
/// `lambda_current`, or `C²û` at `λ*ᵢ` has a negative entry.
pub fn shrink_step(
    c_prime: &OrthantSign,
    i: usize,
    lambda_current: f64,
    gm: &GramMask,
    w: &PenaltyWeights,
) -> Result<Option<ShrinkCandidate>> {
    let line = ShrinkLine::new(c_prime, gm, w)?;
    Ok(match screen(&line, c_prime, i, lambda_current, gm, w)? {
        Evaluation::Valid(cand) => Some(cand),
        Evaluation::Rejected { .. } => None,
    })
}

fn screen(
    line: &ShrinkLine,
    c_prime: &OrthantSign,
    i: usize,
    lambda_current: f64,
    gm: &GramMask,
    w: &PenaltyWeights,
) -> Result<Evaluation> {
    if c_prime.get(i) == 0 {
        return Err(Error::InvalidParameter("shrink coordinate must be active"));
    }
    let Some(lambda_hat) = line.crossing(i) else {
        return Ok(Evaluation::Rejected { lambda_hat: None, verdict: Verdict::ZeroDenominator });
    };
    let tau = gm.sign_tolerance();
    let mut c2u = line.at(lambda_hat);
    c2u[i] = 0.0;
    if c2u.iter().any(|&v| v < -tau) {
        return Ok(Evaluation::Rejected { lambda_hat: Some(lambda_hat), verdict: Verdict::NegativeEntries });
    }
    if lambda_hat <= lambda_current + 1e-12 * (1.0 + lambda_current) {
        return Ok(Evaluation::Rejected { lambda_hat: Some(lambda_hat), verdict: Verdict::NotAboveCurrent });
    }
    c2u.iter_mut().filter(|v| v.abs() <= tau).for_each(|v| *v = 0.0);
    let beta_hat = apply_sign(c_prime, &c2u)?;
    Ok(Evaluation::Valid(ShrinkCandidate {
        lambda_hat,
        criterion: criterion_gram(gm, lambda_hat, &beta_hat, w),
        beta_hat,
        orthant_from: c_prime.clone(),
        coordinate: i,
    }))
}

/// Closed-form evaluator with the shrink line memoized per orthant: `λ*ᵢ`
/// does not depend on the current `λ`, only its screening does.
struct LassoEvaluator<'a> {
    gm: &'a GramMask,
    w: &'a PenaltyWeights,
    lines: BTreeMap<OrthantSign, ShrinkLine>,
}

impl LassoEvaluator<'_> {
    fn line(&mut self, c: &OrthantSign) -> Result<&ShrinkLine> {
        if !self.lines.contains_key(c) {
            let line = ShrinkLine::new(c, self.gm, self.w)?;
            self.lines.insert(c.clone(), line);
        }
        Ok(&self.lines[c])
    }
}

impl MoveEvaluator for LassoEvaluator<'_> {
    fn evaluate(&mut self, c_prime: &OrthantSign, i: usize, lambda_current: f64) -> Result<Evaluation> {
        let (gm, w) = (self.gm, self.w);
        screen(self.line(c_prime)?, c_prime, i, lambda_current, gm, w)
    }

    fn criterion(&self, lambda: f64, beta: &[f64]) -> f64 {
        criterion_gram(self.gm, lambda, beta, self.w)
    }

    fn c2u(&mut self, c: &OrthantSign, lambda: f64) -> Result<Vec<f64>> {
        Ok(self.line(c)?.at(lambda))
    }

    fn penalty(&self, lambda: f64, j: usize) -> f64 {
        lambda * self.w.weights()[j]
    }

    fn root_tolerance(&self) -> f64 {
        0.0
    }
}

/// Exact lasso path from the least-squares fit (`λ = 0`) to `λ_max`.
pub fn lasso_path(gm: &GramMask, w: &PenaltyWeights) -> Result<RegPath> {
    lasso_path_traced(gm, w, &mut |_| {})
}

/// As [`lasso_path`], reporting every shrinkage evaluation to `observer`.
pub fn lasso_path_traced(gm: &GramMask, w: &PenaltyWeights, observer: &mut dyn FnMut(&MoveRecord)) -> Result<RegPath> {
    w.check(gm.p())?;
    let mut ev = LassoEvaluator { gm, w, lines: BTreeMap::new() };
    trace(gm, PathKind::Lasso(w.clone()), &mut ev, observer)
}
