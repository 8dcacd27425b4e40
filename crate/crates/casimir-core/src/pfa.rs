//! Proximity force approximation (PFA) for the cylinder–plate geometry.
//!
//! The cylinder surface is decomposed into strips parallel to the plate;
//! each strip at angle `θ` from the near side contributes the parallel-plate
//! interaction density at local gap `d(θ) = a + r(1 - cos θ)`, weighted by
//! the projected width `r cos θ dθ` (both halves of the cylinder):
//!
//! ```text
//! E_pfa = 2 L r ∫_0^{π/2} E_pp(d(θ), T) cos θ dθ
//! F_pfa = 2 L r ∫_0^{π/2} F_pp(d(θ), T) cos θ dθ
//! ```
//!
//! with the parallel-plate densities of [`crate::parallel_plate`] (Dirichlet
//! scalar; the Neumann scalar has identical plate spectra, and a perfect
//! conductor is the sum of the two — see [`pec_scale`]).
//!
//! [`pfa_asymptotic`] provides the closed-form expansions of these integrals
//! in the three temperature regimes; all coefficients are built from `ζ` and
//! elementary constants at call time.

use crate::error::{Error, Result};
use crate::fmath::sqrt;
use crate::geometry::{CylinderPlate, PlateGap, Quantity};
use crate::parallel_plate::{energy_density, force_density, DEFAULT_SERIES_TOL};
use crate::quadrature::adaptive;
use crate::specfun::riemann_zeta;

const PI: f64 = core::f64::consts::PI;

/// Default relative tolerance for the strip integral.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Temperature regime of a closed-form PFA expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PfaRegime {
    /// `aT ≪ rT ≪ 1`: zero-temperature leading term, thermal corrections
    /// as powers `T³`, `T⁴`.
    LowT,
    /// `aT ≪ 1 ≪ rT`: the *thermal part* `E(T) - E(0)` (add the
    /// zero-temperature result for the full quantity).
    MediumT,
    /// `1 ≪ aT ≪ rT`: the classical (temperature-linear) term.
    HighT,
}

/// Expansion depth of [`pfa_asymptotic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PfaOrder {
    Leading,
    WithThermal,
}

fn strip_integral(
    sys: &CylinderPlate,
    quad_tol: f64,
    density: impl Fn(&PlateGap, f64) -> Result<f64>,
) -> Result<f64> {
    if !(quad_tol > 0.0) || !(quad_tol < 1.0) {
        return Err(Error::Domain("quad_tol must lie in (0, 1)"));
    }
    let (a, r, t) = (sys.a(), sys.r(), sys.t());
    let mut f = |theta: f64| {
        let d = a + r * (1.0 - libm::cos(theta));
        let gap = PlateGap::new(d, t)?;
        Ok(density(&gap, DEFAULT_SERIES_TOL)? * libm::cos(theta))
    };
    let (v, _err) = adaptive(&mut f, 0.0, 0.5 * PI, quad_tol, f64::MIN_POSITIVE)?;
    Ok(2.0 * sys.length_l() * r * v)
}

/// PFA interaction force (Dirichlet scalar), negative for attraction.
pub fn pfa_force(sys: &CylinderPlate, quad_tol: f64) -> Result<f64> {
    strip_integral(sys, quad_tol, force_density)
}

/// PFA interaction energy (Dirichlet scalar), interaction-normalized
/// (`E → 0` at infinite separation).
pub fn pfa_energy(sys: &CylinderPlate, quad_tol: f64) -> Result<f64> {
    strip_integral(sys, quad_tol, energy_density)
}

/// Closed-form expansions of the PFA integrals.
///
/// * `LowT`, `Leading`: the zero-temperature PFA terms
///   `E = -π³ L √r / (1920 √2 a^{5/2})`, `F = -π³ L √r / (768 √2 a^{7/2})`.
/// * `LowT`, `WithThermal`: adds the power-law thermal corrections
///   `ΔE = -ζ(3) L r T³/(2π) + (π² L r T⁴/45)(a + r(1 - π/4))`,
///   `ΔF = -π² L r T⁴/45`.
/// * `MediumT`: the thermal part `Δ_T = X(T) - X(0)` of the PFA integral,
///   whose expansion for `aT ≪ 1 ≪ rT` is
///   `Δ_T E = -(ζ(5/2) ζ(3/2)/(4√2 π)) L √r T^{5/2}` plus, at
///   `WithThermal`, `+(3 ζ(3/2) ζ(5/2)/(32 √2 π)) L T^{3/2}/√r`; and
///   `Δ_T F = (3 ζ(1/2) ζ(7/2)/(4√2 π)) L √r T^{7/2}` plus, at
///   `WithThermal`, `-(3/(8√2)) ζ(-1/2) ζ(9/2) L T^{5/2}/√r`.
/// * `HighT`, either order: the classical terms
///   `E = -ζ(3) L T √r / (16 √2 a^{3/2})`,
///   `F = -3 ζ(3) L T √r / (32 √2 a^{5/2})` (the neglected corrections are
///   exponentially small in `aT`, so both orders coincide).
pub fn pfa_asymptotic(
    sys: &CylinderPlate,
    regime: PfaRegime,
    quantity: Quantity,
    order: PfaOrder,
) -> Result<f64> {
    let (a, r, el, t) = (sys.a(), sys.r(), sys.length_l(), sys.t());
    let sqrt2 = sqrt(2.0);
    let sqrt_r = sqrt(r);
    match (regime, quantity) {
        (PfaRegime::LowT, Quantity::Energy) => {
            let pi3 = PI * PI * PI;
            let leading = -pi3 * el * sqrt_r / (1920.0 * sqrt2 * a * a * sqrt(a));
            if order == PfaOrder::Leading {
                return Ok(leading);
            }
            let zeta3 = riemann_zeta(3.0)?;
            let thermal = -zeta3 * el * r * t * t * t / (2.0 * PI)
                + PI * PI * el * r * t * t * t * t / 45.0 * (a + r * (1.0 - 0.25 * PI));
            Ok(leading + thermal)
        }
        (PfaRegime::LowT, Quantity::Force) => {
            let pi3 = PI * PI * PI;
            let leading = -pi3 * el * sqrt_r / (768.0 * sqrt2 * a * a * a * sqrt(a));
            if order == PfaOrder::Leading {
                return Ok(leading);
            }
            Ok(leading - PI * PI * el * r * t * t * t * t / 45.0)
        }
        (PfaRegime::MediumT, Quantity::Energy) => {
            let t52 = t * t * sqrt(t);
            let lead =
                -riemann_zeta(2.5)? * riemann_zeta(1.5)? / (4.0 * sqrt2 * PI) * el * sqrt_r * t52;
            if order == PfaOrder::Leading {
                return Ok(lead);
            }
            let second = 3.0 * riemann_zeta(1.5)? * riemann_zeta(2.5)? / (32.0 * sqrt2 * PI) * el
                / sqrt_r
                * t
                * sqrt(t);
            Ok(lead + second)
        }
        (PfaRegime::MediumT, Quantity::Force) => {
            let t72 = t * t * t * sqrt(t);
            let lead = 3.0 * riemann_zeta(0.5)? * riemann_zeta(3.5)? / (4.0 * sqrt2 * PI)
                * el
                * sqrt_r
                * t72;
            if order == PfaOrder::Leading {
                return Ok(lead);
            }
            let second = -3.0 / (8.0 * sqrt2) * riemann_zeta(-0.5)? * riemann_zeta(4.5)? * el
                / sqrt_r
                * t
                * t
                * sqrt(t);
            Ok(lead + second)
        }
        (PfaRegime::HighT, Quantity::Energy) => {
            let zeta3 = riemann_zeta(3.0)?;
            Ok(-zeta3 * el * t * sqrt_r / (16.0 * sqrt2 * a * sqrt(a)))
        }
        (PfaRegime::HighT, Quantity::Force) => {
            let zeta3 = riemann_zeta(3.0)?;
            Ok(-3.0 * zeta3 * el * t * sqrt_r / (32.0 * sqrt2 * a * a * sqrt(a)))
        }
    }
}

/// Combine Dirichlet and Neumann scalar results into the perfect-conductor
/// value (the electromagnetic problem separates exactly into the two
/// scalars, so the combination is a plain sum).
pub fn pec_scale(dirichlet_value: f64, neumann_value: f64) -> f64 {
    dirichlet_value + neumann_value
}
