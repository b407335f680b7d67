//! Path types and the sequential shrink/reactivate tracer shared by the lasso
//! and the elastic net.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::data::GramMask;
use crate::enet::{beta_hat_enet, EnetConfig};
use crate::error::{Error, Result};
use crate::lasso::{beta_hat_lasso, ols_fit, PenaltyWeights};
use crate::linalg::{apply_sign, OrthantSign};

/// Sign pattern used for the least-squares start: `|β̂ᵢ| <= 1e-12` counts as zero.
pub const OLS_ZERO_TOLERANCE: f64 = 1e-12;

/// Relative width within which two candidate `λ̂` are considered tied.
pub const TIE_TOLERANCE: f64 = 1e-10;

/// Outcome of one shrinkage evaluation that passed screening.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrinkCandidate {
    pub lambda_hat: f64,
    pub beta_hat: Vec<f64>,
    /// `L̂` for the lasso, `Ê` for the elastic net.
    pub criterion: f64,
    /// Orthant `C′` the shrink was evaluated in.
    pub orthant_from: OrthantSign,
    /// Coordinate driven to zero.
    pub coordinate: usize,
}

impl ShrinkCandidate {
    pub fn zero_count(&self) -> usize {
        self.beta_hat.iter().filter(|b| **b == 0.0).count()
    }

    /// Orthant reached by the move.
    pub fn orthant_to(&self) -> OrthantSign {
        OrthantSign::of(&self.beta_hat, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathBreakpoint {
    pub lambda: f64,
    pub beta: Vec<f64>,
    pub criterion: f64,
    /// Orthant traversed on the segment that ends at this breakpoint. All
    /// zeros for the first breakpoint, which has no predecessor.
    pub segment_orthant: OrthantSign,
}

/// Which penalty a path was computed for.
#[derive(Debug, Clone, PartialEq)]
pub enum PathKind {
    /// Plain lasso (unit weights) or adaptive lasso.
    Lasso(PenaltyWeights),
    ElasticNet(EnetConfig),
}

/// Breakpoints of an exact regularization path, ordered by increasing `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegPath {
    kind: PathKind,
    breakpoints: Vec<PathBreakpoint>,
}

impl RegPath {
    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn breakpoints(&self) -> &[PathBreakpoint] {
        &self.breakpoints
    }

    pub fn p(&self) -> usize {
        self.breakpoints[0].beta.len()
    }

    /// Last breakpoint, where every coefficient is zero.
    pub fn lambda_end(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1].lambda
    }

    /// Orthants traversed by the segments, in path order.
    pub fn segment_orthants(&self) -> impl Iterator<Item = &OrthantSign> {
        self.breakpoints[1..].iter().map(|b| &b.segment_orthant)
    }

    /// Coefficients on the segment ending at breakpoint `k` (k >= 1),
    /// evaluated at any `λ` with that segment's orthant formula.
    pub fn segment_beta(&self, gm: &GramMask, k: usize, lambda: f64) -> Result<Vec<f64>> {
        let c = &self.breakpoints[k].segment_orthant;
        match &self.kind {
            PathKind::Lasso(w) => beta_hat_lasso(c, lambda, gm, w),
            PathKind::ElasticNet(cfg) => beta_hat_enet(c, lambda, gm, cfg),
        }
    }

    /// Index `k` of the segment `[λ_{k−1}, λ_k]` containing `lambda`, or
    /// `None` outside `[0, λ_end]`.
    pub fn segment_index(&self, lambda: f64) -> Option<usize> {
        if !(lambda >= 0.0) || lambda > self.lambda_end() {
            return None;
        }
        let k = self.breakpoints.partition_point(|b| b.lambda < lambda);
        Some(k.max(1))
    }

    /// Coefficients of the path at an arbitrary `λ >= 0`.
    pub fn beta_at(&self, gm: &GramMask, lambda: f64) -> Result<Vec<f64>> {
        if !(lambda >= 0.0) {
            return Err(Error::InvalidParameter("lambda must be nonnegative"));
        }
        if lambda == 0.0 {
            return Ok(self.breakpoints[0].beta.clone());
        }
        match self.segment_index(lambda) {
            Some(k) if self.breakpoints[k].lambda == lambda => Ok(self.breakpoints[k].beta.clone()),
            Some(k) => self.segment_beta(gm, k, lambda),
            None => Ok(vec![0.0; self.p()]),
        }
    }

    /// `samples` evenly spaced points per segment, endpoints included, as
    /// `(segment index, λ, β)`. A single sample yields just the segment
    /// start.
    pub fn sample_segments(&self, gm: &GramMask, samples: usize) -> Result<Vec<(usize, f64, Vec<f64>)>> {
        let mut out = Vec::new();
        for k in 1..self.breakpoints.len() {
            let (a, b) = (self.breakpoints[k - 1].lambda, self.breakpoints[k].lambda);
            for s in 0..samples {
                // Endpoints come from the stored breakpoints, whose zeros are exact.
                let (lambda, beta) = if s == 0 {
                    (a, self.breakpoints[k - 1].beta.clone())
                } else if s + 1 == samples {
                    (b, self.breakpoints[k].beta.clone())
                } else {
                    let lambda = a + (b - a) * s as f64 / (samples - 1) as f64;
                    (lambda, self.segment_beta(gm, k, lambda)?)
                };
                out.push((k, lambda, beta));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    /// Shrink a coordinate of the current orthant.
    Shrink,
    /// Shrink from a higher-dimensional neighbour `C′` of the current orthant.
    Reactivate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    /// Passed screening but another candidate had a smaller `λ̂`.
    NotMinimal,
    /// `(S⁻·C²·w)ᵢ = 0`: the coordinate never reaches zero on this line.
    ZeroDenominator,
    /// Elastic net only: the breakpoint function has no sign change above
    /// the current `λ`.
    NoRoot,
    /// `C²û` at `λ̂` has a negative entry.
    NegativeEntries,
    /// `λ̂` does not exceed the current `λ`.
    NotAboveCurrent,
    /// Smaller than the accepted `λ̂`, but the segment leading to it leaves
    /// the solution set (a zero coefficient violates its penalty bound).
    OffPath,
}

/// One evaluation of the shrinkage step, as logged by a traced fit.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveRecord {
    /// Outer iteration (0 for the moves out of the least-squares orthant).
    pub step: usize,
    pub lambda_current: f64,
    pub current: OrthantSign,
    pub kind: MoveKind,
    pub orthant_from: OrthantSign,
    pub coordinate: usize,
    /// Raw root `λ*ᵢ`, before screening; `None` when it does not exist.
    pub lambda_hat: Option<f64>,
    pub verdict: Verdict,
}

impl MoveRecord {
    /// Orthant the move would land in, `C′` with `coordinate` zeroed.
    pub fn orthant_to(&self) -> OrthantSign {
        self.orthant_from.with(self.coordinate, 0)
    }
}

pub(crate) enum Evaluation {
    Valid(ShrinkCandidate),
    Rejected { lambda_hat: Option<f64>, verdict: Verdict },
}

/// One shrinkage evaluation: closed form for the lasso, root solve for the
/// elastic net.
pub(crate) trait MoveEvaluator {
    fn evaluate(&mut self, c_prime: &OrthantSign, i: usize, lambda_current: f64) -> Result<Evaluation>;

    /// Criterion at `λ = 0` for the starting coefficients.
    fn criterion(&self, lambda: f64, beta: &[f64]) -> f64;

    /// `C²û` of orthant `c` at `lambda`.
    fn c2u(&mut self, c: &OrthantSign, lambda: f64) -> Result<Vec<f64>>;

    /// Bound on `|Xⱼᵀr|` for a zero coefficient `j` at `lambda`.
    fn penalty(&self, lambda: f64, j: usize) -> f64;

    /// Absolute accuracy of the `λ̂` values returned by `evaluate`.
    fn root_tolerance(&self) -> f64;
}

/// Candidate ordering: smallest `λ̂`; ties within [`TIE_TOLERANCE`] go to
/// more zeros in `β̂`, then the lower coordinate, then evaluation order.
fn better(a: &ShrinkCandidate, b: &ShrinkCandidate) -> bool {
    let scale = 1.0 + a.lambda_hat.abs().max(b.lambda_hat.abs());
    if (a.lambda_hat - b.lambda_hat).abs() > TIE_TOLERANCE * scale {
        return a.lambda_hat < b.lambda_hat;
    }
    let (za, zb) = (a.zero_count(), b.zero_count());
    if za != zb {
        return za > zb;
    }
    a.coordinate < b.coordinate
}

/// Orthant traversed between `lambda` and the candidate's `λ̂`, or `None`
/// when the candidate does not continue the solution path.
///
/// The segment runs through the candidate orthant `C′`, or, when the move is
/// the entry point of a reactivated coordinate, through `C′` with that
/// coordinate zeroed. Either way the orthant must hold a valid solution at
/// the midpoint and have no earlier event (a coefficient reaching zero or a
/// zero coefficient reaching its penalty bound) than `λ̂`.
fn segment_orthant<E: MoveEvaluator>(
    gm: &GramMask,
    evaluator: &mut E,
    events: &mut Vec<(OrthantSign, f64)>,
    lambda: f64,
    cand: &ShrinkCandidate,
) -> Result<Option<OrthantSign>> {
    let mid = 0.5 * (lambda + cand.lambda_hat);
    let landing = cand.orthant_to();
    for seg in [&cand.orthant_from, &landing] {
        if on_solution_set(gm, evaluator, seg, mid)? {
            let next = match events.iter().find(|(o, _)| o == seg) {
                Some((_, e)) => *e,
                None => {
                    let e = next_event(evaluator, seg, lambda)?;
                    events.push((seg.clone(), e));
                    e
                }
            };
            let slack = 1e-9 * (1.0 + cand.lambda_hat) + 4.0 * evaluator.root_tolerance();
            if cand.lambda_hat <= next + slack {
                return Ok(Some(seg.clone()));
            }
        }
        if landing == cand.orthant_from {
            break;
        }
    }
    Ok(None)
}

/// Smallest `λ` above `lambda` at which the solution restricted to `seg`
/// stops being the path: an active coefficient crosses zero or a zero one
/// would enter.
fn next_event<E: MoveEvaluator>(evaluator: &mut E, seg: &OrthantSign, lambda: f64) -> Result<f64> {
    let floor = lambda + 1e-12 * (1.0 + lambda);
    let mut first = f64::INFINITY;
    let mut note = |ev: Evaluation| {
        let lh = match ev {
            Evaluation::Valid(cand) => Some(cand.lambda_hat),
            Evaluation::Rejected { lambda_hat, .. } => lambda_hat,
        };
        if let Some(lh) = lh {
            if lh > floor && lh < first {
                first = lh;
            }
        }
    };
    for j in 0..seg.len() {
        if seg.get(j) == 0 {
            for k in [-1i8, 1] {
                note(evaluator.evaluate(&seg.with(j, k), j, lambda)?);
            }
        } else {
            note(evaluator.evaluate(seg, j, lambda)?);
        }
    }
    Ok(first)
}

fn fallback_segment<E: MoveEvaluator>(
    evaluator: &mut E,
    c: &OrthantSign,
    lambda: f64,
    cand: &ShrinkCandidate,
    gm: &GramMask,
) -> Result<OrthantSign> {
    let mid = evaluator.c2u(&cand.orthant_from, 0.5 * (lambda + cand.lambda_hat))?;
    Ok(if mid.iter().all(|&v| v >= -gm.sign_tolerance()) { cand.orthant_from.clone() } else { c.clone() })
}

fn on_solution_set<E: MoveEvaluator>(gm: &GramMask, evaluator: &mut E, seg: &OrthantSign, lambda: f64) -> Result<bool> {
    let tau = gm.sign_tolerance();
    let c2u = evaluator.c2u(seg, lambda)?;
    if c2u.iter().any(|&v| v < -tau) {
        return Ok(false);
    }
    let beta = apply_sign(seg, &c2u)?;
    let corr = gm.correlations(&beta);
    Ok((0..seg.len()).filter(|&j| seg.get(j) == 0).all(|j| corr[j].abs() <= evaluator.penalty(lambda, j) + tau))
}

/// Orthants obtained from `c` by giving `level` of its zero coordinates a
/// sign, in enumeration order.
fn reactivations(c: &OrthantSign, zeros: &[usize], level: usize) -> Vec<OrthantSign> {
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = (0..level).collect();
    if level > zeros.len() {
        return out;
    }
    loop {
        for mask in 0..(1u32 << level) {
            let mut c_prime = c.clone();
            for (b, &z) in chosen.iter().enumerate() {
                c_prime = c_prime.with(zeros[z], if mask >> (level - 1 - b) & 1 == 0 { -1 } else { 1 });
            }
            out.push(c_prime);
        }
        // Next combination of `level` indices out of `zeros.len()`.
        let Some(pos) = (0..level).rev().find(|&b| chosen[b] < zeros.len() - level + b) else {
            return out;
        };
        chosen[pos] += 1;
        for b in pos + 1..level {
            chosen[b] = chosen[b - 1] + 1;
        }
    }
}

pub(crate) fn trace<E: MoveEvaluator>(
    gm: &GramMask,
    kind: PathKind,
    evaluator: &mut E,
    observer: &mut dyn FnMut(&MoveRecord),
) -> Result<RegPath> {
    let p = gm.p();
    let ols = ols_fit(gm)?;
    let mut c = OrthantSign::of(&ols, OLS_ZERO_TOLERANCE);
    let beta0: Vec<f64> = ols.iter().zip(c.signs()).map(|(&b, &s)| if s == 0 { 0.0 } else { b }).collect();
    let mut breakpoints = vec![PathBreakpoint {
        lambda: 0.0,
        criterion: evaluator.criterion(0.0, &beta0),
        beta: beta0,
        segment_orthant: OrthantSign::zeros(p),
    }];
    let mut lambda = 0.0;
    let max_moves = 3usize.saturating_pow(p as u32).saturating_add(1);
    let mut step = 0;

    while !c.is_origin() {
        if step >= max_moves {
            return Err(Error::NoValidCandidate { lambda });
        }
        let mut records: Vec<MoveRecord> = Vec::new();
        let mut valid: Vec<(usize, ShrinkCandidate)> = Vec::new();
        let mut considered = 0;
        let zeros: Vec<usize> = (0..p).filter(|&j| c.get(j) == 0).collect();
        let mut pick = None;
        let mut events: Vec<(OrthantSign, f64)> = Vec::new();

        // Level 1 is the usual move set: shrink each active coordinate, or
        // reactivate one zero coordinate with either sign. Higher levels
        // reactivate several zero coordinates at once and are only tried when
        // no lower-level candidate stays on the solution set.
        for level in 1..=zeros.len().max(1) {
            let mut consider = |c_prime: &OrthantSign, i: usize, kind: MoveKind| -> Result<()> {
                let (lambda_hat, verdict) = match evaluator.evaluate(c_prime, i, lambda)? {
                    Evaluation::Valid(cand) => {
                        let lh = cand.lambda_hat;
                        valid.push((records.len(), cand));
                        (Some(lh), Verdict::NotMinimal)
                    }
                    Evaluation::Rejected { lambda_hat, verdict } => (lambda_hat, verdict),
                };
                records.push(MoveRecord {
                    step,
                    lambda_current: lambda,
                    current: c.clone(),
                    kind,
                    orthant_from: c_prime.clone(),
                    coordinate: i,
                    lambda_hat,
                    verdict,
                });
                Ok(())
            };

            if level == 1 {
                for j in 0..p {
                    if c.get(j) == 0 {
                        for k in [-1i8, 1] {
                            let c_prime = c.with(j, k);
                            for i in c_prime.active_indices() {
                                consider(&c_prime, i, MoveKind::Reactivate)?;
                            }
                        }
                    } else {
                        consider(&c, j, MoveKind::Shrink)?;
                    }
                }
            } else {
                for c_prime in reactivations(&c, &zeros, level) {
                    for i in c_prime.active_indices() {
                        consider(&c_prime, i, MoveKind::Reactivate)?;
                    }
                }
            }

            let fresh = &mut valid[considered..];
            fresh.sort_by(|(_, a), (_, b)| {
                if better(a, b) {
                    Ordering::Less
                } else if better(b, a) {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            });
            for n in considered..valid.len() {
                let (idx, cand) = &valid[n];
                if let Some(seg) = segment_orthant(gm, evaluator, &mut events, lambda, cand)? {
                    pick = Some((n, seg));
                    break;
                }
                records[*idx].verdict = Verdict::OffPath;
            }
            if pick.is_some() {
                break;
            }
            considered = valid.len();
        }

        if valid.is_empty() {
            records.iter().for_each(&mut *observer);
            return Err(Error::NoValidCandidate { lambda });
        }
        // Nothing stays on the solution set: take the smallest level-1 `λ̂`.
        let (n, segment_orthant) = match pick {
            Some(found) => found,
            None => {
                for (idx, _) in &valid {
                    records[*idx].verdict = Verdict::NotMinimal;
                }
                let n = (1..valid.len()).fold(0, |b, k| if better(&valid[k].1, &valid[b].1) { k } else { b });
                (n, fallback_segment(evaluator, &c, lambda, &valid[n].1, gm)?)
            }
        };
        let (idx, chosen) = valid.swap_remove(n);
        records[idx].verdict = Verdict::Accepted;
        records.iter().for_each(&mut *observer);

        lambda = chosen.lambda_hat;
        c = chosen.orthant_to();
        breakpoints.push(PathBreakpoint {
            lambda,
            beta: chosen.beta_hat,
            criterion: chosen.criterion,
            segment_orthant,
        });
        step += 1;
    }

    Ok(RegPath { kind, breakpoints })
}
