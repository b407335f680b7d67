//! Bracketed scalar root finding.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Interval with a sign change of `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

#[inline]
fn opposite(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
}

/// Abscissae over `[lo, hi]`: `uniform` evenly spaced points plus
/// `geometric` points whose offsets from `lo` run from `1e-9·(hi − lo)` to
/// `hi − lo` in constant ratio, so roots close to `lo` are separated at any
/// scale. Sorted, both ends included.
pub fn scan_grid(lo: f64, hi: f64, uniform: usize, geometric: usize) -> Vec<f64> {
    let width = hi - lo;
    let mut xs = Vec::with_capacity(uniform + geometric + 2);
    xs.push(lo);
    for k in 1..uniform {
        xs.push(lo + width * k as f64 / (uniform - 1) as f64);
    }
    for k in 0..geometric {
        let e = -9.0 + 9.0 * k as f64 / (geometric.max(2) - 1) as f64;
        xs.push(lo + width * libm::pow(10.0, e));
    }
    xs.push(hi);
    xs.retain(|x| *x >= lo && *x <= hi);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Evaluates `f` at the sorted abscissae `xs` and returns the first interval
/// on which it changes sign. An exact zero at a point yields a degenerate
/// bracket there.
pub fn first_sign_change<F>(mut f: F, xs: &[f64]) -> Result<Option<Bracket>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let Some((&a0, rest)) = xs.split_first() else {
        return Ok(None);
    };
    let mut a = a0;
    let mut fa = f(a)?;
    if fa == 0.0 {
        return Ok(Some(Bracket { lo: a, hi: a, f_lo: 0.0, f_hi: 0.0 }));
    }
    for &b in rest {
        let fb = f(b)?;
        if fb == 0.0 {
            return Ok(Some(Bracket { lo: b, hi: b, f_lo: 0.0, f_hi: 0.0 }));
        }
        if opposite(fa, fb) {
            return Ok(Some(Bracket { lo: a, hi: b, f_lo: fa, f_hi: fb }));
        }
        a = b;
        fa = fb;
    }
    Ok(None)
}

/// False-position point of a bracket, clamped inside it.
fn interpolate(br: &Bracket) -> f64 {
    if br.f_hi == br.f_lo {
        return 0.5 * (br.lo + br.hi);
    }
    let x = br.lo - br.f_lo * (br.hi - br.lo) / (br.f_hi - br.f_lo);
    if x.is_finite() {
        x.clamp(br.lo, br.hi)
    } else {
        0.5 * (br.lo + br.hi)
    }
}

/// Halves the bracket until it is narrower than `tol`, then returns the
/// false-position point of the final bracket (exact for affine `f`).
pub fn bisect<F>(mut f: F, mut br: Bracket, tol: f64, max_iters: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if br.lo == br.hi {
        return Ok(br.lo);
    }
    let mut iters = 0;
    while br.hi - br.lo > tol {
        if iters >= max_iters {
            return Err(Error::ConvergenceFailure { iters });
        }
        iters += 1;
        let mid = 0.5 * (br.lo + br.hi);
        if mid <= br.lo || mid >= br.hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if opposite(br.f_lo, fm) {
            br.hi = mid;
            br.f_hi = fm;
        } else {
            br.lo = mid;
            br.f_lo = fm;
        }
    }
    Ok(interpolate(&br))
}

/// Secant iteration safeguarded by the bracket: a step that leaves the
/// bracket or is not finite hands over to [`bisect`] on the current bracket.
pub fn secant<F>(mut f: F, mut br: Bracket, tol: f64, max_iters: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if br.lo == br.hi {
        return Ok(br.lo);
    }
    let (mut x0, mut f0) = (br.lo, br.f_lo);
    let (mut x1, mut f1) = (br.hi, br.f_hi);
    for iters in 0..max_iters {
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() || x2 <= br.lo || x2 >= br.hi {
            return bisect(f, br, tol, max_iters - iters);
        }
        let f2 = f(x2)?;
        if f2 == 0.0 || (x2 - x1).abs() < tol {
            return Ok(x2);
        }
        if opposite(br.f_lo, f2) {
            br.hi = x2;
            br.f_hi = f2;
        } else {
            br.lo = x2;
            br.f_lo = f2;
        }
        (x0, f0, x1, f1) = (x1, f1, x2, f2);
    }
    Err(Error::ConvergenceFailure { iters: max_iters })
}
