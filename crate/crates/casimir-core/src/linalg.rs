//! Minimal dense linear algebra for the determinant engine: a row-major
//! matrix type, LU factorization with partial pivoting, the signed
//! log-determinant, and linear solves against multiple right-hand sides.
//!
//! The engine only ever needs `ln det(1 - M)` and `Tr[(1 - M)^{-1} Q]` for
//! dense symmetric-structured matrices of dimension up to a few thousand;
//! a straightforward pivoted LU with contiguous row operations is fully
//! adequate and keeps the crate `no_std`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{abs, ln};

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Identity matrix.
    pub fn eye(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `self * other` (naive triple loop, used only in tests and small
    /// verification paths).
    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &o) in dst.iter_mut().zip(orow.iter()) {
                    *d += aik * o;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        let mut t = 0.0;
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }
}

/// LU factorization with partial pivoting, stored in place.
pub struct Lu {
    lu: Matrix,
    piv: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factor `a` (consumed). Fails on exactly singular pivots.
    pub fn factor(mut a: Matrix) -> Result<Lu> {
        let n = a.dim();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for col in 0..n {
            // Pivot search.
            let mut p = col;
            let mut best = abs(a.get(col, col));
            for r in (col + 1)..n {
                let v = abs(a.get(r, col));
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 {
                return Err(Error::Domain("singular matrix in LU factorization"));
            }
            if p != col {
                for j in 0..n {
                    let tmp = a.get(col, j);
                    a.set(col, j, a.get(p, j));
                    a.set(p, j, tmp);
                }
                piv.swap(col, p);
                sign = -sign;
            }
            let inv_pivot = 1.0 / a.get(col, col);
            // Eliminate below the pivot with contiguous row updates.
            for r in (col + 1)..n {
                let factor = a.get(r, col) * inv_pivot;
                a.set(r, col, factor);
                if factor != 0.0 {
                    let (top, bottom) = a.data.split_at_mut(r * n);
                    let prow = &top[col * n + col + 1..col * n + n];
                    let rrow = &mut bottom[col + 1..n];
                    for (x, &u) in rrow.iter_mut().zip(prow.iter()) {
                        *x -= factor * u;
                    }
                }
            }
        }
        Ok(Lu { lu: a, piv, sign })
    }

    /// `(sign, ln|det|)` of the factored matrix.
    pub fn sign_ln_det(&self) -> (f64, f64) {
        let n = self.lu.dim();
        let mut sign = self.sign;
        let mut ln_abs = 0.0;
        for i in 0..n {
            let d = self.lu.get(i, i);
            if d < 0.0 {
                sign = -sign;
            }
            ln_abs += ln(abs(d));
        }
        (sign, ln_abs)
    }

    /// Solve `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.lu.dim();
        debug_assert_eq!(b.len(), n);
        // Apply the recorded permutation.
        let mut pb: Vec<f64> = Vec::with_capacity(n);
        for i in 0..n {
            pb.push(b[self.piv[i]]);
        }
        // Forward substitution (unit lower triangle).
        for i in 1..n {
            let mut s = pb[i];
            let row = self.lu.row(i);
            for (j, pbj) in pb[..i].iter().enumerate() {
                s -= row[j] * pbj;
            }
            pb[i] = s;
        }
        // Back substitution.
        for i in (0..n).rev() {
            let mut s = pb[i];
            let row = self.lu.row(i);
            for (j, pbj) in pb.iter().enumerate().skip(i + 1) {
                s -= row[j] * pbj;
            }
            pb[i] = s / row[i];
        }
        b.copy_from_slice(&pb);
    }
}

/// `ln det(1 - M)` for a matrix `M` with spectral radius below one.
///
/// Errors with [`Error::DeterminantOutOfRange`] if the computed determinant
/// is not strictly positive — for the scattering matrices of this crate
/// `det(1 - M) ∈ (0, 1]` holds mathematically, so a violated sign always
/// signals numerical trouble (`xi_context` is carried into the error to
/// identify the offending frequency). Tiny positive log-determinants from
/// rounding are clamped to zero so the returned value is always `≤ 0`.
pub fn ln_det_one_minus(m: &Matrix, xi_context: f64) -> Result<f64> {
    let n = m.dim();
    let a = Matrix::from_fn(n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - m.get(i, j)
    });
    let lu = Lu::factor(a).map_err(|_| Error::DeterminantOutOfRange {
        log_det: f64::NEG_INFINITY,
        xi: xi_context,
    })?;
    let (sign, ln_abs) = lu.sign_ln_det();
    if sign <= 0.0 {
        return Err(Error::DeterminantOutOfRange {
            log_det: ln_abs,
            xi: xi_context,
        });
    }
    // det(1 - M) ≤ 1 up to rounding; clamp stray positives of O(eps · n).
    if ln_abs > 1e-10 {
        return Err(Error::DeterminantOutOfRange {
            log_det: ln_abs,
            xi: xi_context,
        });
    }
    Ok(ln_abs.min(0.0))
}

/// `Tr[(1 - M)^{-1} Q]`: factor `1 - M` once, then solve against every
/// column of `Q` and accumulate the diagonal of the solution.
pub fn trace_inv_one_minus_times(m: &Matrix, q: &Matrix, xi_context: f64) -> Result<f64> {
    let n = m.dim();
    debug_assert_eq!(n, q.dim());
    let a = Matrix::from_fn(n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - m.get(i, j)
    });
    let lu = Lu::factor(a).map_err(|_| Error::DeterminantOutOfRange {
        log_det: f64::NEG_INFINITY,
        xi: xi_context,
    })?;
    let (sign, ln_abs) = lu.sign_ln_det();
    if sign <= 0.0 {
        return Err(Error::DeterminantOutOfRange {
            log_det: ln_abs,
            xi: xi_context,
        });
    }
    let mut col = vec![0.0_f64; n];
    let mut trace = 0.0;
    for j in 0..n {
        for (i, c) in col.iter_mut().enumerate() {
            *c = q.get(i, j);
        }
        lu.solve_in_place(&mut col);
        trace += col[j];
    }
    Ok(trace)
}
