//! Dense linear algebra for sign-masked Gram matrices.
//!
//! For an orthant matrix `C` (diagonal, entries in {−1, 0, +1}) and a Gram
//! matrix `G = XᵀX`, the masked matrix `S = C·G·C` is singular whenever `C`
//! has zeros. Its generalized inverse `S⁻` is the ordinary inverse of the
//! active block, conjugated by the active signs and scattered back into the
//! `p × p` frame, so that `S·S⁻ = S⁻·S = C²`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};
use core::str::FromStr;

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len(self.cols, v.len())?;
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `selfᵀ · v`.
    pub fn tr_mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len(self.rows, v.len())?;
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a * vi;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_len(self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · self`, symmetric by construction.
    pub fn gram(&self) -> Matrix {
        let p = self.cols;
        let mut g = Matrix::zeros(p, p);
        for i in 0..p {
            for j in i..p {
                let s: f64 = (0..self.rows).map(|r| self[(r, i)] * self[(r, j)]).sum();
                g[(i, j)] = s;
                g[(j, i)] = s;
            }
        }
        g
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Diagonal of an orthant matrix `C`: one entry in {−1, 0, +1} per coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrthantSign(Vec<i8>);

impl OrthantSign {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(&s) = signs.iter().find(|s| !(-1..=1).contains(*s)) {
            return Err(Error::InvalidSign(s as i64));
        }
        Ok(OrthantSign(signs))
    }

    pub fn zeros(p: usize) -> Self {
        OrthantSign(vec![0; p])
    }

    /// Sign pattern of `values`; entries with `|v| <= tol` map to 0.
    pub fn of(values: &[f64], tol: f64) -> Self {
        OrthantSign(
            values
                .iter()
                .map(|&v| {
                    if v.abs() <= tol {
                        0
                    } else if v > 0.0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// True for the all-zero orthant (the origin).
    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count()
    }

    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// Copy with entry `i` replaced by `sign`.
    pub fn with(&self, i: usize, sign: i8) -> Self {
        debug_assert!((-1..=1).contains(&sign));
        let mut s = self.0.clone();
        s[i] = sign;
        OrthantSign(s)
    }

    /// Every orthant of `R^p` in mixed-radix order over −1 < 0 < +1, the
    /// first coordinate varying slowest.
    pub fn enumerate(p: usize) -> impl Iterator<Item = OrthantSign> {
        let total = 3usize.checked_pow(p as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut k| {
            let mut s = vec![0i8; p];
            for slot in s.iter_mut().rev() {
                *slot = (k % 3) as i8 - 1;
                k /= 3;
            }
            OrthantSign(s)
        })
    }
}

impl fmt::Display for OrthantSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            let ch = match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            };
            fmt::Write::write_char(f, ch)?;
        }
        Ok(())
    }
}

impl FromStr for OrthantSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '\u{2212}' => Ok(-1),
                '0' => Ok(0),
                _ => Err(Error::InvalidParameter("orthant strings use '+', '-' and '0'")),
            })
            .collect::<Result<Vec<i8>>>()
            .map(OrthantSign)
    }
}

/// Elementwise `C·v`.
pub fn apply_sign(c: &OrthantSign, v: &[f64]) -> Result<Vec<f64>> {
    check_len(c.len(), v.len())?;
    Ok(c.0.iter().zip(v).map(|(&s, &x)| if s == 0 { 0.0 } else { f64::from(s) * x }).collect())
}

/// Lower Cholesky factor of a small SPD matrix stored row-major.
#[derive(Debug, Clone)]
struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    fn factor(a: &[f64], n: usize) -> Result<Self> {
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::SingularSubmatrix);
            }
            let d = libm::sqrt(d);
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        Ok(Cholesky { n, l })
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l[i * n + k] * b[k];
            }
            b[i] = s / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * b[k];
            }
            b[i] = s / self.l[i * n + i];
        }
    }
}

/// Factored generalized inverse `S⁻` of `C·G·C + shift·C²`.
///
/// Holds a Cholesky factor of the unsigned active block of `G` (plus the
/// ridge shift) and applies `S⁻` to vectors without forming the matrix.
#[derive(Debug, Clone)]
pub struct MaskedInverse {
    p: usize,
    active: Vec<usize>,
    signs: Vec<f64>,
    chol: Cholesky,
}

impl MaskedInverse {
    pub fn new(gram: &Matrix, c: &OrthantSign, shift: f64) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), found: gram.cols() });
        }
        check_len(gram.rows(), c.len())?;
        let active = c.active_indices();
        let k = active.len();
        let mut block = vec![0.0; k * k];
        for (a, &i) in active.iter().enumerate() {
            for (b, &j) in active.iter().enumerate() {
                block[a * k + b] = gram[(i, j)];
            }
            block[a * k + a] += shift;
        }
        let chol = Cholesky::factor(&block, k)?;
        let signs = active.iter().map(|&i| f64::from(c.get(i))).collect();
        Ok(MaskedInverse { p: gram.rows(), active, signs, chol })
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    /// `S⁻·v`; entries at zero-sign coordinates are exactly zero.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len(self.p, v.len())?;
        let mut b: Vec<f64> = self.active.iter().zip(&self.signs).map(|(&i, &s)| s * v[i]).collect();
        self.chol.solve_in_place(&mut b);
        let mut out = vec![0.0; self.p];
        for ((&i, &s), x) in self.active.iter().zip(&self.signs).zip(b) {
            out[i] = s * x;
        }
        Ok(out)
    }

    pub fn to_matrix(&self) -> Matrix {
        let k = self.active.len();
        let mut out = Matrix::zeros(self.p, self.p);
        let mut e = vec![0.0; k];
        for col in 0..k {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[col] = 1.0;
            self.chol.solve_in_place(&mut e);
            for row in 0..k {
                let (i, j) = (self.active[row], self.active[col]);
                out[(i, j)] = self.signs[row] * e[row] * self.signs[col];
            }
        }
        out
    }
}

/// `S⁻` for `S = C·G·C`, satisfying `S·S⁻ = S⁻·S = C²`.
pub fn masked_pseudo_inverse(gram: &Matrix, c: &OrthantSign) -> Result<Matrix> {
    Ok(MaskedInverse::new(gram, c, 0.0)?.to_matrix())
}

/// `S(λ)⁻` for the ridge-shifted `S(λ) = C·G·C + λ(1−α)·C²`.
pub fn masked_pseudo_inverse_ridge(gram: &Matrix, c: &OrthantSign, lambda: f64, alpha: f64) -> Result<Matrix> {
    Ok(MaskedInverse::new(gram, c, ridge_shift(lambda, alpha)?)?.to_matrix())
}

pub(crate) fn ridge_shift(lambda: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be finite and nonnegative"));
    }
    Ok(lambda * (1.0 - alpha))
}

/// The masked matrix `C·G·C + shift·C²` itself.
pub fn masked_matrix(gram: &Matrix, c: &OrthantSign, shift: f64) -> Result<Matrix> {
    check_len(gram.rows(), c.len())?;
    let p = c.len();
    let mut s = Matrix::zeros(p, p);
    for i in 0..p {
        for j in 0..p {
            let (ci, cj) = (c.get(i), c.get(j));
            if ci != 0 && cj != 0 {
                s[(i, j)] = f64::from(ci) * gram[(i, j)] * f64::from(cj);
            }
        }
        if c.get(i) != 0 {
            s[(i, i)] += shift;
        }
    }
    Ok(s)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let n = a.rows();
    let mut m = a.clone();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if off <= 1e-30 * (1.0 + m.max_abs() * m.max_abs()) {
            break;
        }
        for pidx in 0..n {
            for q in pidx + 1..n {
                let apq = m[(pidx, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(pidx, pidx)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let cs = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * cs;
                for k in 0..n {
                    let akp = m[(k, pidx)];
                    let akq = m[(k, q)];
                    m[(k, pidx)] = cs * akp - sn * akq;
                    m[(k, q)] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let apk = m[(pidx, k)];
                    let aqk = m[(q, k)];
                    m[(pidx, k)] = cs * apk - sn * aqk;
                    m[(q, k)] = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

/// Solves `G·x = b` for a full SPD matrix.
pub(crate) fn spd_solve(g: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let full = OrthantSign(vec![1; g.rows()]);
    MaskedInverse::new(g, &full, 0.0)?.apply(b)
}
