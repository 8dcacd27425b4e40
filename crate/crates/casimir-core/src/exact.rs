//! Exact finite-temperature cylinder–plate interaction energy and force via
//! the functional determinant `Tr ln(1 − M(ξ))` over cylindrical partial
//! waves.
//!
//! For a cylinder of radius `r` parallel to a plate at surface distance `a`
//! (center height `H = a + r`), imaginary frequency `ξ`, and scalar Dirichlet
//! or Neumann boundary conditions, the scattering-round-trip matrix is
//!
//! ```text
//! Dirichlet:  M_{jk}(ξ) =  I_k(rξ) / K_j(rξ)   · K_{j+k}(2Hξ)
//! Neumann:    M_{jk}(ξ) =  I′_k(rξ) / |K′_j(rξ)| · K_{j+k}(2Hξ)
//! ```
//!
//! with integer orders `j, k ∈ [−m, m]`. All entries are positive, and
//! `entry(j, k) = entry(−j, −k)` exactly (only `|j|, |k|, |j+k|` enter).
//! The companion matrix `Q` replaces the outer factor by `|K′_{j+k}(2Hξ)|`,
//! so that `∂M/∂a = −2ξ Q` entrywise at fixed truncation, which turns
//! `F = −∂E/∂a` into traces of `(1 − M)⁻¹ Q`.
//!
//! Energy and force are frequency integrals of `ln det(1 − M)` and
//! `Tr[(1 − M)⁻¹ Q]`:
//!
//! ```text
//! E(T=0)  = (L/4π) ∫ ξ ln det(1 − M(ξ)) dξ
//! E(T>0)  = (TL/π) Σ′_{l≥0} ∫₀^∞ ln det(1 − M(√(ξ_l² + k²))) dk,   ξ_l = 2πlT
//! E_cl    = (TL/2π) ∫ ln det(1 − M(ξ)) dξ          (the l = 0 term alone)
//! F(T=0)  = −(L/2π) ∫ ξ² g(ξ) dξ,                  g = Tr[(1 − M)⁻¹ Q]
//! F(T>0)  = −(TL/π) ∫ k g(k) dk − (2TL/π) Σ_{l≥1} ξ_l² ∫₀^∞ cosh²θ g(ξ_l cosh θ) dθ
//! ```
//!
//! (the primed sum gives weight 1/2 to `l = 0`; the `cosh` substitution
//! regularizes the `1/√(ξ² − ξ_l²)` weight of the force integrand).
//!
//! Numerically the integrals are taken in the dimensionless variable
//! `u = 2aξ`, in which the integrands decay like `e^{−u}`. Matrices are
//! assembled in log space from the Bessel tables of [`crate::specfun`], and
//! determinants/traces come from pivoted LU factorizations. The reflection
//! symmetry `(j,k) → (−j,−k)` splits every matrix into an even and an odd
//! parity block, which quarters the LU cost; the public
//! [`build_m`]/[`tr_log_one_minus`] operations expose the full matrix, while
//! the integration engine uses the block form internally.
//!
//! Truncation order `m` starts at `ceil(10/√eps)` (the dominant orders scale
//! like `1/eps` with width `1/√eps`) and doubles until the result moves by
//! less than the configured tolerance; a [`ConvergenceReport`] carries the
//! final order, the last doubling delta, the number of Matsubara terms, and
//! the accumulated quadrature error estimate.
//!
//! Perfect-conductor results are the sum of the Dirichlet and Neumann scalar
//! problems throughout.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::fmath;
use crate::geometry::{BoundaryCondition, ConvergenceReport, CylinderPlate, NumericsConfig};
use crate::linalg::{ln_det_one_minus, Lu, Matrix};
use crate::quadrature::integrate_decaying;
use crate::specfun::{
    ln_bessel_i_table, ln_bessel_k_table, ln_i_deriv_table, ln_k_deriv_abs_table,
};

/// Entries with logarithm above this would overflow `f64`; reject instead.
const LN_ENTRY_MAX: f64 = 700.0;

/// Panel width for integrals in the dimensionless variable `u = 2aξ`
/// (integrands decay like `e^{−u}`).
const U_PANEL_WIDTH: f64 = 1.0;

/// Panel width for the `θ` integrals of the finite-temperature force
/// (integrands decay like `e^{−u_l cosh θ}`).
const THETA_PANEL_WIDTH: f64 = 0.5;

/// Minimum and maximum panel counts for the semi-infinite quadratures.
const MIN_PANELS: usize = 4;
const MAX_PANELS: usize = 2000;

/// Tolerated rounding excess of `ln det(1 − M)` above zero.
const LN_DET_SLACK: f64 = 1e-10;

/// Truncated partial-wave scattering matrix at one imaginary frequency.
///
/// Indices run over `j, k ∈ [−m_max, m_max]` (dimension `2·m_max + 1`). All
/// entries are finite and strictly positive, and the matrix is exactly
/// symmetric under `(j, k) → (−j, −k)` because entries depend only on
/// `|j|`, `|k|`, and `|j + k|`.
#[derive(Debug, Clone)]
pub struct ScatteringMatrix {
    m_max: usize,
    xi: f64,
    bc: BoundaryCondition,
    mat: Matrix,
}

/// The force companion matrix has the same shape and symmetry as the
/// scattering matrix; it differs only in the outer Bessel factor.
pub type QMatrix = ScatteringMatrix;

impl ScatteringMatrix {
    /// Truncation order; valid indices are `[−m_max, m_max]`.
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// Imaginary frequency at which the matrix was built.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Boundary condition of the scalar problem.
    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    /// Matrix dimension `2·m_max + 1`.
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Entry at signed partial-wave orders `j, k ∈ [−m_max, m_max]`.
    ///
    /// Panics if an index lies outside the truncation.
    pub fn entry(&self, j: i64, k: i64) -> f64 {
        let m = self.m_max as i64;
        assert!(
            j.abs() <= m && k.abs() <= m,
            "partial-wave index out of range"
        );
        self.mat.get((j + m) as usize, (k + m) as usize)
    }

    /// Dense matrix view (row/column `i` is partial-wave order `i − m_max`).
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }
}

/// Log-space Bessel factor tables for one frequency.
///
/// `ln_num[k]` and `ln_den[j]` are the cylinder-side factors (`I`/`K` for
/// Dirichlet, their derivative magnitudes for Neumann) for orders `0..=m`;
/// `ln_outer[n]` is `ln K_n(2Hξ)` and `ln_outer_deriv[n]` is
/// `ln |K′_n(2Hξ)|` for `0..=2m`.
struct LnTables {
    ln_num: Vec<f64>,
    ln_den: Vec<f64>,
    ln_outer: Vec<f64>,
    ln_outer_deriv: Vec<f64>,
}

fn build_tables(sys: &CylinderPlate, bc: BoundaryCondition, xi: f64, m: usize) -> Result<LnTables> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::Domain("frequency must be positive and finite"));
    }
    let x_in = sys.r() * xi;
    let x_out = 2.0 * sys.h() * xi;
    let ln_i = ln_bessel_i_table(m + 1, x_in)?;
    let ln_k_in = ln_bessel_k_table(m + 1, x_in)?;
    let ln_k_out = ln_bessel_k_table(2 * m + 1, x_out)?;
    let ln_outer_deriv = ln_k_deriv_abs_table(&ln_k_out);
    let (ln_num, ln_den) = match bc {
        BoundaryCondition::Dirichlet => (ln_i, ln_k_in),
        BoundaryCondition::Neumann => (ln_i_deriv_table(&ln_i), ln_k_deriv_abs_table(&ln_k_in)),
        BoundaryCondition::PerfectConductor => {
            return Err(Error::Domain(
                "perfect conductor decomposes into Dirichlet and Neumann scalar problems",
            ));
        }
    };
    Ok(LnTables {
        ln_num,
        ln_den,
        ln_outer: ln_k_out,
        ln_outer_deriv,
    })
}

/// Exponentiate one log-space entry, rejecting values beyond `f64` range.
#[inline]
fn entry_from_ln(ln_e: f64) -> Result<f64> {
    if ln_e > LN_ENTRY_MAX {
        return Err(Error::Overflow("scattering matrix entry"));
    }
    Ok(fmath::exp(ln_e))
}

/// Assemble the full `(2m+1)²` matrix with the given outer factor table.
fn assemble_full(tbl: &LnTables, outer: &[f64], m: usize) -> Result<Matrix> {
    let dim = 2 * m + 1;
    let mut mat = Matrix::zeros(dim);
    let ms = m as isize;
    for row in 0..dim {
        let j = (row as isize - ms).unsigned_abs();
        for col in 0..dim {
            let k = (col as isize - ms).unsigned_abs();
            let n = (row + col).abs_diff(2 * m);
            let v = entry_from_ln(tbl.ln_num[k] - tbl.ln_den[j] + outer[n])?;
            mat.set(row, col, v);
        }
    }
    Ok(mat)
}

fn build_with_outer(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    xi: f64,
    m_max: usize,
    derivative_outer: bool,
) -> Result<ScatteringMatrix> {
    let tbl = build_tables(sys, bc, xi, m_max)?;
    let outer = if derivative_outer {
        &tbl.ln_outer_deriv
    } else {
        &tbl.ln_outer
    };
    let mat = assemble_full(&tbl, outer, m_max)?;
    Ok(ScatteringMatrix { m_max, xi, bc, mat })
}

/// Build the scattering matrix `M(ξ)` for one scalar boundary condition.
///
/// Entries are computed in log space from scaled Bessel tables and then
/// exponentiated, so intermediate overflow cannot occur; an entry whose
/// logarithm exceeds the floating range is reported as an overflow error.
pub fn build_m(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    xi: f64,
    m_max: usize,
) -> Result<ScatteringMatrix> {
    build_with_outer(sys, bc, xi, m_max, false)
}

/// Build the force companion matrix `Q(ξ)` (satisfying `∂M/∂a = −2ξQ`).
pub fn build_q(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    xi: f64,
    m_max: usize,
) -> Result<QMatrix> {
    build_with_outer(sys, bc, xi, m_max, true)
}

/// `ln det(1 − M)` for a built scattering matrix, by pivoted LU.
///
/// The determinant of the full matrix lies in `(0, 1]`; a non-positive or
/// greater-than-one determinant is reported as an error carrying the
/// frequency (truncation too aggressive or geometry outside validity).
pub fn tr_log_one_minus(mat: &ScatteringMatrix) -> Result<f64> {
    ln_det_one_minus(&mat.mat, mat.xi)
}

/// Even/odd parity blocks of a matrix symmetric under `(j,k) → (−j,−k)`.
///
/// The orthogonal basis `{|0⟩, (|k⟩ ± |−k⟩)/√2}` block-diagonalizes both
/// `M` and `Q` simultaneously, so determinants factor and traces add:
/// `det(1−M) = det(1−M_even)·det(1−M_odd)`. The even block is
/// `(m+1)×(m+1)` and keeps the Perron mode; the odd block is `m×m` with
/// entries of mixed sign, so its determinant factor may individually exceed
/// one — only the product is constrained to `(0, 1]`.
struct ParityBlocks {
    even: Matrix,
    odd: Matrix,
}

fn assemble_blocks(tbl: &LnTables, outer: &[f64], m: usize) -> Result<ParityBlocks> {
    let x = |j: usize, k: usize, n: usize| entry_from_ln(tbl.ln_num[k] - tbl.ln_den[j] + outer[n]);
    let mut even = Matrix::zeros(m + 1);
    even.set(0, 0, x(0, 0, 0)?);
    for k in 1..=m {
        even.set(0, k, SQRT_2 * x(0, k, k)?);
    }
    for j in 1..=m {
        even.set(j, 0, SQRT_2 * x(j, 0, j)?);
        for k in 1..=m {
            even.set(j, k, x(j, k, j + k)? + x(j, k, j.abs_diff(k))?);
        }
    }
    let mut odd = Matrix::zeros(m);
    for j in 1..=m {
        for k in 1..=m {
            odd.set(j - 1, k - 1, x(j, k, j + k)? - x(j, k, j.abs_diff(k))?);
        }
    }
    Ok(ParityBlocks { even, odd })
}

/// Factor `(1 − block)` and return its LU together with `ln|det|`,
/// requiring a positive determinant sign (each parity sector inherits
/// spectral radius below one from the full matrix, so its determinant is
/// positive; only the magnitude may exceed one for the odd sector).
fn factor_one_minus(block: &Matrix, xi: f64) -> Result<(Lu, f64)> {
    let n = block.dim();
    let a = Matrix::from_fn(n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - block.get(i, j)
    });
    let lu = Lu::factor(a).map_err(|_| Error::DeterminantOutOfRange {
        log_det: f64::NEG_INFINITY,
        xi,
    })?;
    let (sign, ln_abs) = lu.sign_ln_det();
    if sign <= 0.0 {
        return Err(Error::DeterminantOutOfRange {
            log_det: ln_abs,
            xi,
        });
    }
    Ok((lu, ln_abs))
}

/// `ln det(1 − M(ξ))` through the parity blocks, range-checked on the total.
fn trlog_blocks(sys: &CylinderPlate, bc: BoundaryCondition, xi: f64, m: usize) -> Result<f64> {
    let tbl = build_tables(sys, bc, xi, m)?;
    let blocks = assemble_blocks(&tbl, &tbl.ln_outer, m)?;
    let (_, ln_even) = factor_one_minus(&blocks.even, xi)?;
    let ln_odd = if m > 0 {
        factor_one_minus(&blocks.odd, xi)?.1
    } else {
        0.0
    };
    let total = ln_even + ln_odd;
    if total > LN_DET_SLACK {
        return Err(Error::DeterminantOutOfRange { log_det: total, xi });
    }
    Ok(total.min(0.0))
}

/// `Tr[(1 − block_M)⁻¹ block_Q]` using a ready LU of `(1 − block_M)`.
fn block_trace(lu: &Lu, q: &Matrix) -> f64 {
    let n = q.dim();
    let mut col = alloc::vec![0.0; n];
    let mut trace = 0.0;
    for c in 0..n {
        for (r, slot) in col.iter_mut().enumerate() {
            *slot = q.get(r, c);
        }
        lu.solve_in_place(&mut col);
        trace += col[c];
    }
    trace
}

/// `g(ξ) = Tr[(1 − M)⁻¹ Q]` through the parity blocks, with the same
/// determinant range check as the energy path (every sampled frequency is
/// verified, not silently accepted).
fn g_blocks(sys: &CylinderPlate, bc: BoundaryCondition, xi: f64, m: usize) -> Result<f64> {
    let tbl = build_tables(sys, bc, xi, m)?;
    let mb = assemble_blocks(&tbl, &tbl.ln_outer, m)?;
    let qb = assemble_blocks(&tbl, &tbl.ln_outer_deriv, m)?;
    let (lu_even, ln_even) = factor_one_minus(&mb.even, xi)?;
    let mut trace = block_trace(&lu_even, &qb.even);
    let mut total_ln = ln_even;
    if m > 0 {
        let (lu_odd, ln_odd) = factor_one_minus(&mb.odd, xi)?;
        trace += block_trace(&lu_odd, &qb.odd);
        total_ln += ln_odd;
    }
    if total_ln > LN_DET_SLACK {
        return Err(Error::DeterminantOutOfRange {
            log_det: total_ln,
            xi,
        });
    }
    Ok(trace)
}

/// Initial truncation order: dominant partial waves extend to `~1/eps`
/// with width `~1/√eps`; `ceil(10/√eps)` covers the width with margin.
fn m_heuristic(eps: f64) -> usize {
    let m = fmath::ceil(10.0 / fmath::sqrt(eps));
    (m as usize).max(4)
}

/// Evaluate `eval(m)` at the initial truncation and keep doubling `m` until
/// the relative change drops below `cfg.rel_tol` or `m_cap` blocks further
/// doubling. Returns `(value, m_used, last_delta)`; the delta is `NaN` when
/// only a single evaluation was possible (fixed-m configurations) and above
/// tolerance when the loop stopped at the cap unconverged.
fn converge_m<F>(cfg: &NumericsConfig, eps: f64, mut eval: F) -> Result<(f64, usize, f64)>
where
    F: FnMut(usize) -> Result<f64>,
{
    let m0 = cfg.m_init.unwrap_or_else(|| m_heuristic(eps)).max(1);
    let mut m = m0.min(cfg.m_cap.max(1));
    let mut value = eval(m)?;
    let mut delta = f64::NAN;
    while 2 * m <= cfg.m_cap {
        let next = eval(2 * m)?;
        delta = fmath::abs(next - value) / fmath::abs(next).max(f64::MIN_POSITIVE);
        value = next;
        m *= 2;
        if delta < cfg.rel_tol {
            break;
        }
    }
    Ok((value, m, delta))
}

fn quad_tol(cfg: &NumericsConfig) -> f64 {
    cfg.rel_tol * cfg.quad_rel_factor
}

fn report(m: usize, l: usize, delta: f64, qerr: f64) -> ConvergenceReport {
    ConvergenceReport {
        m_max_used: m,
        l_max_used: l,
        last_doubling_delta: delta,
        quadrature_estimated_error: qerr,
    }
}

/// Merge reports of two independent runs (perfect-conductor summation,
/// thermal differences): worst truncation, worst finite delta, summed
/// quadrature error.
fn combine_reports(a: ConvergenceReport, b: ConvergenceReport) -> ConvergenceReport {
    ConvergenceReport {
        m_max_used: a.m_max_used.max(b.m_max_used),
        l_max_used: a.l_max_used.max(b.l_max_used),
        last_doubling_delta: a.last_doubling_delta.max(b.last_doubling_delta),
        quadrature_estimated_error: a.quadrature_estimated_error + b.quadrature_estimated_error,
    }
}

/// `∫₀^∞ u^p · ln det(1 − M(u/2a)) du` with the panel quadrature.
fn trlog_u_integral(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    m: usize,
    power: u32,
    qtol: f64,
) -> Result<(f64, f64)> {
    let a = sys.a();
    let mut f = |u: f64| -> Result<f64> {
        let w = match power {
            0 => 1.0,
            1 => u,
            _ => u * u,
        };
        Ok(w * trlog_blocks(sys, bc, u / (2.0 * a), m)?)
    };
    integrate_decaying(&mut f, U_PANEL_WIDTH, qtol, MIN_PANELS, MAX_PANELS)
}

/// Zero-temperature interaction energy `E = (L/4π) ∫ ξ ln det(1−M) dξ`
/// (negative), with the truncation order grown until the result is stable
/// to `cfg.rel_tol`.
pub fn energy_zero_t(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    cfg: &NumericsConfig,
) -> Result<(f64, ConvergenceReport)> {
    if let BoundaryCondition::PerfectConductor = bc {
        let (ed, rd) = energy_zero_t(sys, BoundaryCondition::Dirichlet, cfg)?;
        let (en, rn) = energy_zero_t(sys, BoundaryCondition::Neumann, cfg)?;
        return Ok((ed + en, combine_reports(rd, rn)));
    }
    let qtol = quad_tol(cfg);
    let pref = sys.length_l() / (16.0 * PI * sys.a() * sys.a());
    let mut qerr = 0.0;
    let (value, m_used, delta) = converge_m(cfg, sys.eps(), |m| {
        let (v, e) = trlog_u_integral(sys, bc, m, 1, qtol)?;
        qerr = pref * e;
        Ok(pref * v)
    })?;
    Ok((value, report(m_used, 0, delta, qerr)))
}

/// Classical (high-temperature) term `E_cl = (TL/2π) ∫ ln det(1−M) dξ`:
/// the half-weighted `l = 0` Matsubara contribution, exactly linear in `T`.
pub fn classical_term(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    cfg: &NumericsConfig,
) -> Result<(f64, ConvergenceReport)> {
    if !(sys.t() > 0.0) {
        return Err(Error::Domain(
            "classical term requires a positive temperature",
        ));
    }
    if let BoundaryCondition::PerfectConductor = bc {
        let (ed, rd) = classical_term(sys, BoundaryCondition::Dirichlet, cfg)?;
        let (en, rn) = classical_term(sys, BoundaryCondition::Neumann, cfg)?;
        return Ok((ed + en, combine_reports(rd, rn)));
    }
    let qtol = quad_tol(cfg);
    let pref = sys.t() * sys.length_l() / (4.0 * PI * sys.a());
    let mut qerr = 0.0;
    let (value, m_used, delta) = converge_m(cfg, sys.eps(), |m| {
        let (v, e) = trlog_u_integral(sys, bc, m, 0, qtol)?;
        qerr = pref * e;
        Ok(pref * v)
    })?;
    Ok((value, report(m_used, 0, delta, qerr)))
}

/// Geometric tail estimate for a monotonically decaying series: given the
/// two latest term magnitudes, bound the remainder by `t·q/(1−q)` with
/// `q = t/t_prev`. Conservative while the decay has not yet set in.
fn tail_estimate(term: f64, prev: f64) -> f64 {
    if !prev.is_finite() || prev <= 0.0 {
        // No usable ratio yet (first summand): force another term.
        return f64::INFINITY;
    }
    let q = (term / prev).clamp(0.0, 0.99);
    term * q / (1.0 - q)
}

/// Shared Matsubara-summation driver. `l_term(l, u_l)` returns one
/// (sign-carrying) summand and its quadrature error estimate; terms for
/// `l ≥ 1` must decay monotonically at large `l`.
fn matsubara_sum<F>(
    sys: &CylinderPlate,
    cfg: &NumericsConfig,
    mut l_term: F,
) -> Result<(f64, usize, f64)>
where
    F: FnMut(usize, f64) -> Result<(f64, f64)>,
{
    let a = sys.a();
    let t = sys.t();
    let (first, mut qerr) = l_term(0, 0.0)?;
    let mut sum = first;
    let mut prev_mag = f64::INFINITY;
    for l in 1..=cfg.l_cap {
        let u_l = 4.0 * PI * a * (l as f64) * t;
        let (term, e) = l_term(l, u_l)?;
        sum += term;
        qerr += e;
        let mag = fmath::abs(term);
        let tail = tail_estimate(mag, prev_mag);
        prev_mag = mag.max(f64::MIN_POSITIVE);
        if tail <= 0.5 * cfg.rel_tol * fmath::abs(sum) {
            return Ok((sum, l, qerr));
        }
    }
    Err(Error::NonConvergence {
        what: "matsubara frequency sum",
        achieved: prev_mag / fmath::abs(sum).max(f64::MIN_POSITIVE),
        requested: cfg.rel_tol,
    })
}

/// Finite-temperature interaction energy via the Matsubara sum over the
/// smooth transverse-momentum integrals (`T > 0` required),
/// `E = (TL/π) Σ′_l ∫₀^∞ ln det(1 − M(√(ξ_l² + k²))) dk`.
pub fn energy_finite_t(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    cfg: &NumericsConfig,
) -> Result<(f64, ConvergenceReport)> {
    if !(sys.t() > 0.0) {
        return Err(Error::Domain("finite-temperature energy requires t > 0"));
    }
    if let BoundaryCondition::PerfectConductor = bc {
        let (ed, rd) = energy_finite_t(sys, BoundaryCondition::Dirichlet, cfg)?;
        let (en, rn) = energy_finite_t(sys, BoundaryCondition::Neumann, cfg)?;
        return Ok((ed + en, combine_reports(rd, rn)));
    }
    let a = sys.a();
    let qtol = quad_tol(cfg);
    let pref = sys.t() * sys.length_l() / (2.0 * PI * a);
    let mut qerr = 0.0;
    let mut l_used = 0;
    let (value, m_used, delta) = converge_m(cfg, sys.eps(), |m| {
        let (sum, l_max, e) = matsubara_sum(sys, cfg, |l, u_l| {
            let mut f = |v: f64| -> Result<f64> {
                let u = fmath::hypot(u_l, v);
                trlog_blocks(sys, bc, u / (2.0 * a), m)
            };
            let (v, e) = integrate_decaying(&mut f, U_PANEL_WIDTH, qtol, MIN_PANELS, MAX_PANELS)?;
            let weight = if l == 0 { 0.5 } else { 1.0 };
            Ok((weight * v, e))
        })?;
        qerr = pref.abs() * e;
        l_used = l_max;
        Ok(pref * sum)
    })?;
    Ok((value, report(m_used, l_used, delta, qerr)))
}

/// Thermal correction `Δ_T E = energy_finite_t − energy_zero_t`.
pub fn thermal_correction(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    cfg: &NumericsConfig,
) -> Result<(f64, ConvergenceReport)> {
    let (ft, rt) = energy_finite_t(sys, bc, cfg)?;
    let (zt, rz) = energy_zero_t(sys, bc, cfg)?;
    Ok((ft - zt, combine_reports(rt, rz)))
}

/// Exact force with convergence diagnostics; see [`force_exact`].
pub fn force_exact_with_report(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    t: f64,
    cfg: &NumericsConfig,
) -> Result<(f64, ConvergenceReport)> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain("temperature must be finite and non-negative"));
    }
    if let BoundaryCondition::PerfectConductor = bc {
        let (fd, rd) = force_exact_with_report(sys, BoundaryCondition::Dirichlet, t, cfg)?;
        let (fnn, rn) = force_exact_with_report(sys, BoundaryCondition::Neumann, t, cfg)?;
        return Ok((fd + fnn, combine_reports(rd, rn)));
    }
    let a = sys.a();
    let l_len = sys.length_l();
    let qtol = quad_tol(cfg);
    let mut qerr = 0.0;
    let mut l_used = 0;
    if t == 0.0 {
        let pref = -l_len / (16.0 * PI * a * a * a);
        let (value, m_used, delta) = converge_m(cfg, sys.eps(), |m| {
            let a_local = a;
            let mut f =
                |u: f64| -> Result<f64> { Ok(u * u * g_blocks(sys, bc, u / (2.0 * a_local), m)?) };
            let (v, e) = integrate_decaying(&mut f, U_PANEL_WIDTH, qtol, MIN_PANELS, MAX_PANELS)?;
            qerr = pref.abs() * e;
            Ok(pref * v)
        })?;
        return Ok((value, report(m_used, 0, delta, qerr)));
    }
    // The Matsubara driver reads the temperature from the system; keep the
    // explicitly passed value authoritative by re-validating agreement.
    let sys_t = if sys.t() == t { *sys } else { sys.with_t(t)? };
    let (value, m_used, delta) = converge_m(cfg, sys.eps(), |m| {
        let (sum, l_max, e) = matsubara_sum(&sys_t, cfg, |l, u_l| {
            if l == 0 {
                // −(TL/4πa²) ∫ u g(u) du
                let mut f =
                    |u: f64| -> Result<f64> { Ok(u * g_blocks(&sys_t, bc, u / (2.0 * a), m)?) };
                let (v, e) =
                    integrate_decaying(&mut f, U_PANEL_WIDTH, qtol, MIN_PANELS, MAX_PANELS)?;
                let pref = -t * l_len / (4.0 * PI * a * a);
                Ok((pref * v, pref.abs() * e))
            } else {
                // −(2TL/π) ξ_l² ∫ cosh²θ g(ξ_l cosh θ) dθ
                let xi_l = u_l / (2.0 * a);
                let mut f = |theta: f64| -> Result<f64> {
                    let c = fmath::cosh(theta);
                    Ok(c * c * g_blocks(&sys_t, bc, xi_l * c, m)?)
                };
                let (v, e) =
                    integrate_decaying(&mut f, THETA_PANEL_WIDTH, qtol, MIN_PANELS, MAX_PANELS)?;
                let pref = -2.0 * t * l_len * xi_l * xi_l / PI;
                Ok((pref * v, pref.abs() * e))
            }
        })?;
        qerr = e;
        l_used = l_max;
        Ok(sum)
    })?;
    Ok((value, report(m_used, l_used, delta, qerr)))
}

/// Exact Casimir force `F = −∂E/∂a` at temperature `t` (use `t = 0` for the
/// vacuum force). Negative (attractive) for all valid geometries. Built from
/// per-frequency traces `Tr[(1−M)⁻¹Q]` with the same truncation-doubling and
/// Matsubara machinery as the energies.
pub fn force_exact(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    t: f64,
    cfg: &NumericsConfig,
) -> Result<f64> {
    force_exact_with_report(sys, bc, t, cfg).map(|(v, _)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::trace_inv_one_minus_times;

    fn sys(a: f64, t: f64) -> CylinderPlate {
        CylinderPlate::new(a, 1.0, 1.0, t).unwrap()
    }

    fn rel_close(x: f64, y: f64, tol: f64, what: &str) {
        let scale = x.abs().max(y.abs()).max(1e-300);
        assert!(
            (x - y).abs() <= tol * scale,
            "{what}: {x:e} vs {y:e} (rel {:.3e})",
            (x - y).abs() / scale
        );
    }

    #[test]
    fn dirichlet_entry_is_the_bessel_product() {
        // I₀(1)·K₀(2.2)/K₀(1), frozen from a 30-digit reference evaluation.
        let m = build_m(&sys(0.1, 0.0), BoundaryCondition::Dirichlet, 1.0, 3).unwrap();
        rel_close(m.entry(0, 0), 0.2684415244253574, 1e-12, "entry(0,0)");
        // All entries of both boundary conditions are strictly positive.
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            let sm = build_m(&sys(0.1, 0.0), bc, 1.0, 3).unwrap();
            for j in -3..=3 {
                for k in -3..=3 {
                    let v = sm.entry(j, k);
                    assert!(v > 0.0 && v.is_finite(), "{bc:?} entry({j},{k}) = {v}");
                }
            }
        }
    }

    #[test]
    fn entries_reflect_under_index_negation() {
        let m = build_m(&sys(0.17, 0.0), BoundaryCondition::Neumann, 1.3, 5).unwrap();
        for j in -5..=5i64 {
            for k in -5..=5i64 {
                // Exact equality: entries depend only on |j|, |k|, |j+k|.
                assert_eq!(m.entry(j, k), m.entry(-j, -k), "({j},{k})");
            }
        }
        assert_eq!(m.entry(2, -1), m.entry(-2, 1));
    }

    #[test]
    fn entries_decay_at_large_frequency() {
        // rξ = 500: every entry is bounded by e^{−2aξ} up to a modest factor.
        let a = 0.1;
        let xi = 500.0;
        let m = build_m(&sys(a, 0.0), BoundaryCondition::Dirichlet, xi, 2).unwrap();
        let bound = 100.0 * fmath::exp(-2.0 * a * xi);
        for j in -2..=2i64 {
            for k in -2..=2i64 {
                let v = m.entry(j, k);
                assert!(v > 0.0 && v < bound, "entry({j},{k}) = {v:e} vs {bound:e}");
            }
        }
    }

    #[test]
    fn construction_rejects_unsupported_inputs() {
        let s = sys(0.1, 0.0);
        assert!(matches!(
            build_m(&s, BoundaryCondition::PerfectConductor, 1.0, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            build_m(&s, BoundaryCondition::Dirichlet, 0.0, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            build_m(&s, BoundaryCondition::Dirichlet, -2.0, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tr_log_scalar_truncation_is_ln_one_minus_entry() {
        let m = build_m(&sys(0.3, 0.0), BoundaryCondition::Dirichlet, 0.8, 0).unwrap();
        let direct = fmath::ln_1p(-m.entry(0, 0));
        rel_close(
            tr_log_one_minus(&m).unwrap(),
            direct,
            1e-14,
            "1x1 determinant",
        );
    }

    #[test]
    fn tr_log_matches_power_series_for_small_norm() {
        // At a = 0.5, ξ = 1.5 the entries are ≲ 0.07, so the Mercator series
        // −Σ_{s≤12} Tr(Mˢ)/s is converged far below the comparison tolerance.
        let m = build_m(&sys(0.5, 0.0), BoundaryCondition::Dirichlet, 1.5, 6).unwrap();
        let mut power = m.matrix().clone();
        let mut series = 0.0;
        for s in 1..=12 {
            series -= power.trace() / s as f64;
            power = power.matmul(m.matrix());
        }
        rel_close(
            tr_log_one_minus(&m).unwrap(),
            series,
            1e-10,
            "log power series",
        );
    }

    #[test]
    fn parity_blocks_reproduce_full_determinant_and_trace() {
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for &(a, xi) in &[(0.1, 2.0), (0.3, 0.7), (0.15, 5.0)] {
                let s = sys(a, 0.0);
                let m = 8;
                let full_m = build_m(&s, bc, xi, m).unwrap();
                let split = trlog_blocks(&s, bc, xi, m).unwrap();
                rel_close(
                    tr_log_one_minus(&full_m).unwrap(),
                    split,
                    1e-12,
                    "determinant split",
                );
                let full_q = build_q(&s, bc, xi, m).unwrap();
                let g_full =
                    trace_inv_one_minus_times(full_m.matrix(), full_q.matrix(), xi).unwrap();
                let g_split = g_blocks(&s, bc, xi, m).unwrap();
                rel_close(g_full, g_split, 1e-12, "trace split");
            }
        }
    }

    #[test]
    fn truncation_strengthens_binding() {
        // |Tr ln(1−M)| is non-decreasing in the truncation order.
        let s = sys(0.1, 0.0);
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            let mut last = 0.0;
            for m in [2, 4, 8, 16, 32] {
                let v = trlog_blocks(&s, bc, 1.0, m).unwrap();
                assert!(v <= last + 1e-15, "{bc:?} m={m}: {v} vs {last}");
                last = v;
            }
        }
    }

    #[test]
    fn zero_t_energy_tracks_first_order_coefficient() {
        // eps = 0.1: E / E_leading = 1 + (7/36)·0.1 ± 0.01.
        let s = sys(0.1, 0.0);
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let (e, rep) = energy_zero_t(&s, BoundaryCondition::Dirichlet, &cfg).unwrap();
        let leading = -PI.powi(3) / (1920.0 * SQRT_2 * 0.1f64.powf(2.5));
        let ratio = e / leading;
        let predicted = 1.0 + 7.0 * 0.1 / 36.0;
        assert!(
            (ratio - predicted).abs() < 0.01,
            "ratio {ratio} vs {predicted} (m = {}, delta = {:e})",
            rep.m_max_used,
            rep.last_doubling_delta
        );
        assert!(rep.converged_to(1e-3));
        assert!(e < 0.0);
    }

    #[test]
    fn neumann_zero_t_interaction_is_weaker() {
        let s = sys(0.1, 0.0);
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let (ed, _) = energy_zero_t(&s, BoundaryCondition::Dirichlet, &cfg).unwrap();
        let (en, _) = energy_zero_t(&s, BoundaryCondition::Neumann, &cfg).unwrap();
        assert!(ed < 0.0 && en < 0.0);
        assert!(en / ed < 1.0, "E_N/E_D = {}", en / ed);
    }

    #[test]
    fn interaction_weakens_with_separation() {
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let (near, _) = energy_zero_t(&sys(0.1, 0.0), BoundaryCondition::Dirichlet, &cfg).unwrap();
        let (far, _) = energy_zero_t(&sys(0.2, 0.0), BoundaryCondition::Dirichlet, &cfg).unwrap();
        assert!(far.abs() < near.abs());
    }

    #[test]
    fn perfect_conductor_adds_scalar_modes() {
        let s = sys(0.2, 0.0);
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let (ed, _) = energy_zero_t(&s, BoundaryCondition::Dirichlet, &cfg).unwrap();
        let (en, _) = energy_zero_t(&s, BoundaryCondition::Neumann, &cfg).unwrap();
        let (ep, _) = energy_zero_t(&s, BoundaryCondition::PerfectConductor, &cfg).unwrap();
        assert_eq!(ep, ed + en);
    }

    #[test]
    fn finite_t_energy_approaches_zero_t_limit() {
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let cold = sys(0.2, 0.05);
        let (et, rep) = energy_finite_t(&cold, BoundaryCondition::Dirichlet, &cfg).unwrap();
        let (e0, _) = energy_zero_t(&cold, BoundaryCondition::Dirichlet, &cfg).unwrap();
        assert!(rep.l_max_used > 5, "expected a long Matsubara sum");
        rel_close(et, e0, 0.02, "T → 0 limit");
    }

    #[test]
    fn high_temperature_energy_is_dominated_by_classical_term() {
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let hot = sys(0.2, 20.0);
        let (et, _) = energy_finite_t(&hot, BoundaryCondition::Dirichlet, &cfg).unwrap();
        let (ecl, _) = classical_term(&hot, BoundaryCondition::Dirichlet, &cfg).unwrap();
        rel_close(et, ecl, 0.01, "classical dominance");
        // The full energy adds exponentially small negative extras.
        assert!(et <= ecl);
    }

    #[test]
    fn classical_term_is_linear_in_temperature_and_negative() {
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let (e1, _) = classical_term(&sys(0.15, 1.0), BoundaryCondition::Dirichlet, &cfg).unwrap();
        let (e2, _) = classical_term(&sys(0.15, 2.0), BoundaryCondition::Dirichlet, &cfg).unwrap();
        assert!(e1 < 0.0);
        assert_eq!(e2, 2.0 * e1);
        assert!(matches!(
            classical_term(&sys(0.15, 0.0), BoundaryCondition::Dirichlet, &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn force_matches_energy_derivative_at_fixed_truncation() {
        // At fixed truncation the identity ∂M/∂a = −2ξQ is exact entrywise,
        // so the force must match a central difference of the energy.
        let cfg = NumericsConfig::default()
            .with_fixed_m(16)
            .with_rel_tol(1e-8);
        let a = 0.1;
        let t = 1.0;
        let f = force_exact(&sys(a, t), BoundaryCondition::Dirichlet, t, &cfg).unwrap();
        let h = 1e-4 * a;
        let (e_hi, _) =
            energy_finite_t(&sys(a + h, t), BoundaryCondition::Dirichlet, &cfg).unwrap();
        let (e_lo, _) =
            energy_finite_t(&sys(a - h, t), BoundaryCondition::Dirichlet, &cfg).unwrap();
        let fd = -(e_hi - e_lo) / (2.0 * h);
        rel_close(f, fd, 1e-4, "force vs −dE/da");
        assert!(f < 0.0);
    }

    #[test]
    fn zero_t_force_tracks_leading_form() {
        // eps = 0.05: F / F_leading ∈ [1.0, 1.02] (first correction 7ε/60).
        let cfg = NumericsConfig::default().with_rel_tol(1e-3);
        let f = force_exact(&sys(0.05, 0.0), BoundaryCondition::Dirichlet, 0.0, &cfg).unwrap();
        let leading = -PI.powi(3) / (768.0 * SQRT_2 * 0.05f64.powf(3.5));
        let ratio = f / leading;
        assert!(
            ratio > 1.0 && ratio < 1.02,
            "force ratio to leading form: {ratio}"
        );
    }

    #[test]
    fn scale_invariance_under_similarity() {
        // Scaling all lengths by λ and T by 1/λ scales the energy by 1/λ.
        let cfg = NumericsConfig::default()
            .with_fixed_m(16)
            .with_rel_tol(1e-6);
        let base = CylinderPlate::new(0.1, 1.0, 1.0, 1.0).unwrap();
        let (e, _) = energy_finite_t(&base, BoundaryCondition::Dirichlet, &cfg).unwrap();
        for lambda in [2.0, 10.0] {
            let scaled = CylinderPlate::new(0.1 * lambda, lambda, lambda, 1.0 / lambda).unwrap();
            let (es, _) = energy_finite_t(&scaled, BoundaryCondition::Dirichlet, &cfg).unwrap();
            rel_close(lambda * es, e, 1e-10, "similarity scaling");
        }
    }

    #[test]
    fn fixed_truncation_reports_nan_delta() {
        let cfg = NumericsConfig::default().with_fixed_m(8).with_rel_tol(1e-3);
        let (_, rep) = energy_zero_t(&sys(0.3, 0.0), BoundaryCondition::Dirichlet, &cfg).unwrap();
        assert_eq!(rep.m_max_used, 8);
        assert!(rep.last_doubling_delta.is_nan());
        assert!(!rep.converged_to(1e-3));
    }
}
