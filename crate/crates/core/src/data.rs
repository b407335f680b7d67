//! Regression data and the Gram quantities shared by every path step.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, max_abs, symmetric_eigenvalues, Matrix};

/// Eigenvalue ratio below which `XᵀX` is treated as singular.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Design matrix and response, with provenance of centering and scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Matrix,
    y: Vec<f64>,
    centered: bool,
    scale_factor: f64,
    column_means: Vec<f64>,
    response_mean: f64,
}

impl Dataset {
    /// Wraps already prepared data as-is (no centering, unit scale).
    pub fn new(x: Matrix, y: Vec<f64>) -> Result<Self> {
        let p = x.cols();
        Self::build(x, y, false, 1.0, alloc::vec![0.0; p], 0.0)
    }

    /// Optionally centers columns of `x` and `y` on their means, then divides
    /// every entry by `scale`.
    ///
    /// Scaling by `k` leaves the coefficient path unchanged and divides every
    /// breakpoint `λ` by `k²`: the residual term of the criterion scales by
    /// `1/k²` while the penalty does not.
    pub fn prepare(raw_x: Matrix, raw_y: Vec<f64>, center: bool, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParameter("scale must be positive and finite"));
        }
        if raw_x.rows() != raw_y.len() {
            return Err(Error::DimensionMismatch { expected: raw_x.rows(), found: raw_y.len() });
        }
        let (n, p) = (raw_x.rows(), raw_x.cols());
        if n == 0 || p == 0 {
            return Err(Error::EmptyData);
        }
        let mut column_means = alloc::vec![0.0; p];
        let mut response_mean = 0.0;
        if center {
            for j in 0..p {
                column_means[j] = (0..n).map(|i| raw_x[(i, j)]).sum::<f64>() / n as f64;
            }
            response_mean = raw_y.iter().sum::<f64>() / n as f64;
        }
        let mut data = Vec::with_capacity(n * p);
        for i in 0..n {
            for j in 0..p {
                data.push((raw_x[(i, j)] - column_means[j]) / scale);
            }
        }
        let y = raw_y.iter().map(|v| (v - response_mean) / scale).collect();
        let x = Matrix::from_row_major(n, p, data)?;
        Self::build(x, y, center, scale, column_means, response_mean)
    }

    fn build(
        x: Matrix,
        y: Vec<f64>,
        centered: bool,
        scale_factor: f64,
        column_means: Vec<f64>,
        response_mean: f64,
    ) -> Result<Self> {
        if x.rows() == 0 || x.cols() == 0 {
            return Err(Error::EmptyData);
        }
        if x.rows() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.rows(), found: y.len() });
        }
        if x.as_slice().iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("data contains non-finite values"));
        }
        let ev = symmetric_eigenvalues(&x.gram())?;
        let (lo, hi) = (ev[0], ev[ev.len() - 1]);
        if !(hi > 0.0) || lo < RANK_TOLERANCE * hi {
            return Err(Error::RankDeficient { ratio: if hi > 0.0 { lo / hi } else { 0.0 } });
        }
        Ok(Dataset { x, y, centered, scale_factor, column_means, response_mean })
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn p(&self) -> usize {
        self.x.cols()
    }

    pub fn centered(&self) -> bool {
        self.centered
    }

    pub fn scale_factor(&self) -> f64 {
        self.scale_factor
    }

    /// Means removed by centering (all zero when not centered).
    pub fn column_means(&self) -> &[f64] {
        &self.column_means
    }

    pub fn response_mean(&self) -> f64 {
        self.response_mean
    }

    /// True when centering removed a mean that was not already zero.
    pub fn had_nonzero_means(&self) -> bool {
        let tol = 1e-10 * (1.0 + max_abs(&self.column_means).max(self.response_mean.abs()));
        self.centered && (self.column_means.iter().any(|m| m.abs() > tol) || self.response_mean.abs() > tol)
    }

    /// Checks that every column and the response have zero mean.
    pub fn is_mean_zero(&self) -> bool {
        let n = self.n() as f64;
        let col_ok = (0..self.p()).all(|j| {
            let col = self.x.column(j);
            col.iter().sum::<f64>().abs() / n <= 1e-10 * max_abs(&col).max(f64::MIN_POSITIVE)
        });
        let y_ok = self.y.iter().sum::<f64>().abs() / n <= 1e-10 * max_abs(&self.y).max(f64::MIN_POSITIVE);
        col_ok && y_ok
    }

    pub fn gram_mask(&self) -> GramMask {
        GramMask::from_dataset(self)
    }
}

/// `XᵀX`, `XᵀY` and `YᵀY`, computed once per fit.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMask {
    gram: Matrix,
    xty: Vec<f64>,
    yty: f64,
}

impl GramMask {
    pub fn from_dataset(data: &Dataset) -> Self {
        let xty = data.x.tr_mul_vec(&data.y).expect("dataset dimensions are checked at construction");
        GramMask { gram: data.x.gram(), xty, yty: dot(&data.y, &data.y) }
    }

    /// From precomputed sufficient statistics; `gram` must be symmetric.
    pub fn from_parts(gram: Matrix, xty: Vec<f64>, yty: f64) -> Result<Self> {
        if !gram.is_square() || gram.rows() != xty.len() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), found: xty.len() });
        }
        Ok(GramMask { gram, xty, yty })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn xty(&self) -> &[f64] {
        &self.xty
    }

    pub fn yty(&self) -> f64 {
        self.yty
    }

    pub fn p(&self) -> usize {
        self.xty.len()
    }

    /// `½‖Y − Xβ‖²` expanded through the Gram quantities.
    pub fn half_rss(&self, beta: &[f64]) -> f64 {
        let g_beta = self.gram.mul_vec(beta).expect("beta has length p");
        0.5 * self.yty - dot(beta, &self.xty) + 0.5 * dot(beta, &g_beta)
    }

    /// `Xⱼᵀ(Y − Xβ)` for every `j`.
    pub fn correlations(&self, beta: &[f64]) -> Vec<f64> {
        let g_beta = self.gram.mul_vec(beta).expect("beta has length p");
        self.xty.iter().zip(g_beta).map(|(a, b)| a - b).collect()
    }

    /// Scale of `XᵀY` used by the sign and root tolerances.
    pub fn xty_scale(&self) -> f64 {
        max_abs(&self.xty).max(1.0)
    }

    /// Screening tolerance for negative entries of `C²û`.
    pub fn sign_tolerance(&self) -> f64 {
        1e-9 * self.xty_scale()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn centering_removes_means() {
        let x = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 1.0], &[5.0, 7.0]]).unwrap();
        let d = Dataset::prepare(x, vec![1.0, 2.0, 6.0], true, 1.0).unwrap();
        assert!(d.is_mean_zero());
        assert!(d.had_nonzero_means());
        assert_eq!(d.column_means(), &[3.0, 10.0 / 3.0]);
    }

    #[test]
    fn scale_divides_entries() {
        let x = Matrix::from_rows(&[&[2.0], &[-2.0]]).unwrap();
        let d = Dataset::prepare(x, vec![4.0, -4.0], false, 2.0).unwrap();
        assert_eq!(d.x().as_slice(), &[1.0, -1.0]);
        assert_eq!(d.y(), &[2.0, -2.0]);
        assert!(Dataset::prepare(d.x().clone(), vec![0.0, 0.0], true, 0.0).is_err());
    }

    #[test]
    fn rank_deficient_rejected() {
        let x = Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 4.0], &[-3.0, -6.0]]).unwrap();
        assert!(matches!(Dataset::new(x, vec![1.0, 0.0, -1.0]), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn length_mismatch_rejected() {
        let x = Matrix::from_rows(&[&[1.0], &[2.0]]).unwrap();
        assert!(matches!(Dataset::new(x, vec![1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn half_rss_matches_direct() {
        let x = Matrix::from_rows(&[&[1.0, 0.5], &[-1.0, 2.0], &[0.0, -2.5]]).unwrap();
        let y = vec![0.3, -1.2, 0.9];
        let d = Dataset::new(x.clone(), y.clone()).unwrap();
        let beta = [0.7, -0.2];
        let fit = x.mul_vec(&beta).unwrap();
        let direct: f64 = 0.5 * y.iter().zip(&fit).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
        assert!((d.gram_mask().half_rss(&beta) - direct).abs() < 1e-14);
    }
}
