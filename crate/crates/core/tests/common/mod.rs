#![allow(dead_code)]

pub mod ledger;

use orthant_core::{Dataset, GramMask, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn toy_a() -> Dataset {
    let x = Matrix::from_rows(&[
        &[0.0, 0.0, -1.0],
        &[-1.0, 1.0, 0.0],
        &[0.0, -1.0, -1.0],
        &[-1.0, 0.0, 0.0],
        &[-1.0, 1.0, 0.0],
        &[-1.0, -1.0, -1.0],
        &[4.0, 0.0, 3.0],
    ])
    .unwrap();
    Dataset::new(x, vec![1.0, 1.0, 0.0, -1.0, 1.0, 1.0, -3.0]).unwrap()
}

pub fn toy_b() -> Dataset {
    let x = Matrix::from_rows(&[
        &[-1.0, 1.0, 0.0],
        &[-1.0, 1.0, -1.0],
        &[0.0, 0.0, -1.0],
        &[0.0, 1.0, -1.0],
        &[1.0, -1.0, 1.0],
        &[1.0, -2.0, 2.0],
    ])
    .unwrap();
    Dataset::new(x, vec![1.0, 1.0, 0.0, -1.0, 0.0, -1.0]).unwrap()
}

/// First column of `toy_a` alone.
pub fn single_column() -> Dataset {
    let d = toy_a();
    let x = Matrix::from_row_major(7, 1, d.x().column(0)).unwrap();
    Dataset::new(x, d.y().to_vec()).unwrap()
}

/// Rows of (λ, β₁, β₂, β₃, criterion).
pub type Rows = &'static [[f64; 5]];

pub const LASSO: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.1176471, 0.0, 0.7352941, -1.0294118, 1.0743945],
    [0.3333333, 0.0, 0.6666667, -1.0000000, 1.4444444],
    [1.4186047, -0.3720930, 0.0, -0.3953488, 2.7652785],
    [5.4285714, -0.4285714, 0.0, 0.0, 5.1632653],
    [14.0, 0.0, 0.0, 0.0, 7.0],
];

/// Adaptive lasso, γ = 0.25. The reference criterion column is evaluated
/// without the weights.
pub const ADAPTIVE_QUARTER: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.09594963, 0.0, 0.7414637, -1.0325815, 1.0352911],
    [1.03873325, 0.0, 0.4342734, -0.9060934, 2.4139669],
    [2.07061914, -0.1135323, 0.0, -0.6283158, 3.0895394],
    [3.05595699, 0.0, 0.0, -0.6726211, 3.9085728],
    [11.47856765, 0.0, 0.0, 0.0, 6.9904572],
];

pub const ADAPTIVE_ONE: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.03374469, 0.0, 0.7608727, -1.0411072, 0.9141630],
    [2.19961666, 0.0, 0.0, -0.7620751, 3.7633227],
    [13.04285714, 0.0, 0.0, 0.0, 6.8261139],
];

pub const ENET_HALF: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.1459742, 0.0, 0.7315377, -1.0262653, 1.0539203],
    [0.2471659, 0.0, 0.7039861, -1.0132639, 1.1811668],
    [2.6872073, -0.3743399, 0.0, -0.3589718, 2.8979158],
    [16.9614814, -0.1937892, 0.0, 0.0, 6.4652136],
    [28.0, 0.0, 0.0, 0.0, 7.0],
];

pub const ENET_NINE_TENTHS: Rows = &[
    [0.0, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
    [0.1223731, 0.0, 0.7346599, -1.0288828, 1.0709295],
    [0.3125817, 0.0, 0.6760267, -1.0032808, 1.3801569],
    [1.5631239, -0.3732292, 0.0, -0.3900203, 2.7791579],
    [6.5623470, -0.3918375, 0.0, 0.0, 5.4142556],
    [15.5555555, 0.0, 0.0, 0.0, 7.0000000],
];

/// Largest absolute deviation between a fitted path and reference rows.
/// Returns `None` when the breakpoint counts differ.
pub fn max_deviation(path: &orthant_core::RegPath, rows: Rows, criterion: bool) -> Option<f64> {
    let bps = path.breakpoints();
    if bps.len() != rows.len() {
        return None;
    }
    let mut worst: f64 = 0.0;
    for (bp, row) in bps.iter().zip(rows) {
        worst = worst.max((bp.lambda - row[0]).abs());
        for j in 0..3 {
            worst = worst.max((bp.beta[j] - row[j + 1]).abs());
        }
        if criterion {
            worst = worst.max((bp.criterion - row[4]).abs());
        }
    }
    Some(worst)
}

/// Centered random design with a minimum eigenvalue bounded away from zero
/// relative to the largest.
pub fn random_problem(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Dataset {
    loop {
        let mut raw = Vec::with_capacity(n * p);
        for _ in 0..n * p {
            raw.push(rng.sample::<f64, _>(StandardNormal));
        }
        let beta: Vec<f64> =
            (0..p).map(|_| if rng.random_bool(0.3) { 0.0 } else { rng.random_range(-2.0..2.0) }).collect();
        let y: Vec<f64> = (0..n)
            .map(|r| {
                let signal: f64 = (0..p).map(|j| raw[r * p + j] * beta[j]).sum();
                signal + rng.sample::<f64, _>(StandardNormal)
            })
            .collect();
        let x = Matrix::from_row_major(n, p, raw).unwrap();
        let Ok(data) = Dataset::prepare(x, y, true, 1.0) else { continue };
        let eig = orthant_core::linalg::symmetric_eigenvalues(&data.x().gram()).unwrap();
        if eig[0] > 1e-3 * eig[p - 1] {
            return data;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gm(data: &Dataset) -> GramMask {
    data.gram_mask()
}

/// Largest violation of the lasso stationarity conditions at `(λ, β)`:
/// active coordinates must satisfy `Xⱼᵀr = λ·wⱼ·sign(βⱼ)` within
/// `1e-8·(1+λ)`, inactive ones `|Xⱼᵀr| ≤ λ·wⱼ + 1e-8`. Nonpositive means
/// the certificate holds.
pub fn lasso_kkt_excess(gm: &GramMask, lambda: f64, beta: &[f64], w: &[f64]) -> f64 {
    let corr = gm.correlations(beta);
    let mut worst = f64::NEG_INFINITY;
    for j in 0..beta.len() {
        let excess = if beta[j] != 0.0 {
            (corr[j] - lambda * w[j] * beta[j].signum()).abs() - 1e-8 * (1.0 + lambda)
        } else {
            corr[j].abs() - lambda * w[j] - 1e-8
        };
        worst = worst.max(excess);
    }
    worst
}

/// Elastic-net counterpart of [`lasso_kkt_excess`] with tolerance `1e-7`.
pub fn enet_kkt_excess(gm: &GramMask, lambda: f64, alpha: f64, beta: &[f64]) -> f64 {
    let corr = gm.correlations(beta);
    let mut worst = f64::NEG_INFINITY;
    for j in 0..beta.len() {
        let excess = if beta[j] != 0.0 {
            (corr[j] - lambda * (1.0 - alpha) * beta[j] - lambda * alpha * beta[j].signum()).abs()
                - 1e-7 * (1.0 + lambda)
        } else {
            corr[j].abs() - lambda * alpha - 1e-7
        };
        worst = worst.max(excess);
    }
    worst
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Largest β difference between the path and the exhaustive solver over
/// `points` evenly spaced λ in `[0, λ_end]`.
pub fn oracle_gap(
    gm: &GramMask,
    path: &orthant_core::RegPath,
    mode: &orthant_core::oracle::OracleMode,
    points: usize,
) -> f64 {
    let grid = orthant_core::oracle::LambdaGrid::linspace(0.0, path.lambda_end(), points).unwrap();
    let fits = orthant_core::oracle::all_orthant_path(gm, &grid, mode, 14).unwrap();
    fits.iter().map(|fit| max_abs_diff(&path.beta_at(gm, fit.lambda).unwrap(), &fit.beta)).fold(0.0, f64::max)
}

/// Random problem sizes matching the acceptance setup: n ∈ [5, 20],
/// p ∈ [2, 5], with n large enough for a centered full-rank design.
pub fn random_sized_problem(rng: &mut ChaCha8Rng) -> Dataset {
    let p = rng.random_range(2..=5);
    let n = rng.random_range((p + 2).max(5)..=20);
    random_problem(rng, n, p)
}
