//! Closed-form small-separation expansions of the cylinder–plate Casimir
//! interaction, derived from the exact functional-determinant representation.
//!
//! Each routine returns the leading term of the relevant expansion plus (on
//! request, or inherently for the thermal-correction series) the first
//! subleading correction in `eps = a / r`, as explicit ζ/Γ closed forms.
//! Three temperature regimes are covered:
//!
//! * **Zero temperature** (`aT → 0`): energy `∝ a^{-5/2}`, force `∝ a^{-7/2}`,
//!   with boundary-condition-dependent first-order coefficients.
//! * **Medium temperature** (`aT ≪ 1 ≪ rT`): thermal corrections in
//!   half-integer powers of `T`, built from products `ζ(s)ζ(s′)`.
//! * **High temperature** (`1 ≪ aT`): the classical `∝ T` term, where the
//!   first-order Dirichlet coefficient depends on the order of summation and
//!   residue extraction (see [`SummationVariant`]).
//!
//! All ζ and Γ values are computed by [`crate::specfun`]; no decimal
//! approximations enter the formulas themselves.
//!
//! For a perfectly conducting cylinder and plate the scalar Dirichlet and
//! Neumann results are summed term by term. The exception is
//! [`medium_t_thermal_correction`], which at the displayed orders is the same
//! for both scalar problems and therefore takes no boundary condition; a
//! perfect-conductor caller doubles it.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI, SQRT_2};

use crate::fmath;
use crate::geometry::{BoundaryCondition, CylinderPlate, Quantity};
use crate::specfun::{riemann_zeta, EULER_GAMMA};

/// Temperature regime whose expansion produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticRegime {
    /// `aT → 0`: pure vacuum contribution.
    ZeroT,
    /// `aT ≪ 1 ≪ rT`: thermal-correction series in half-integer powers of `T`.
    MediumT,
    /// `1 ≪ aT ≪ rT`: classical term linear in `T`.
    HighT,
}

/// How many terms of an expansion are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionOrder {
    /// Leading term only.
    Leading,
    /// Leading term plus the first correction in `eps = a / r`.
    FirstOrder,
}

/// Order of operations in the high-temperature Dirichlet derivation.
///
/// The first-order coefficient of the classical term comes from a residue of
/// a Mellin-type integrand that also carries an image-sum index `s`. Taking
/// the residue at the critical point first annihilates one family of terms
/// (`ResidueFirst`); summing over `s` first turns that family into a ζ pole
/// whose finite part survives (`SumFirst`). The two prescriptions disagree at
/// first order; `ResidueFirst` has the same sign structure as the leading
/// term and agrees better with independent worldline numerics, so it is the
/// default. Neumann brackets are insensitive to the choice: the divergent
/// residue-first image sum forces the summed form, which is what both
/// variants return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummationVariant {
    /// Extract the residue before the image sum (default).
    ResidueFirst,
    /// Carry out the image sum first, picking up a ζ-pole contribution.
    SumFirst,
}

/// Warning attached to results evaluated outside their trust region.
pub const EXTRAPOLATION_WARNING: &str =
    "eps = a/r exceeds 0.3: small-separation expansion is extrapolated";

/// Separation ratio above which the zero-temperature expansions are flagged.
const EXTRAPOLATION_EPS: f64 = 0.3;

/// A closed-form asymptotic evaluation, decomposed term by term.
#[derive(Debug, Clone)]
pub struct AsymptoticResult {
    /// Total value; always the exact floating-point sum of `terms`.
    pub value: f64,
    /// Temperature regime of the expansion.
    pub regime: AsymptoticRegime,
    /// Truncation order of the expansion.
    pub order: ExpansionOrder,
    /// Summation prescription (high-temperature regime only, `None` otherwise).
    pub variant: Option<SummationVariant>,
    /// Labelled terms whose sum is `value`.
    pub terms: Vec<(&'static str, f64)>,
    /// Set when the expansion is evaluated outside its trust region.
    pub warning: Option<&'static str>,
}

impl AsymptoticResult {
    fn from_terms(
        regime: AsymptoticRegime,
        order: ExpansionOrder,
        variant: Option<SummationVariant>,
        terms: Vec<(&'static str, f64)>,
        warning: Option<&'static str>,
    ) -> Self {
        let mut value = 0.0;
        for &(_, t) in &terms {
            value += t;
        }
        AsymptoticResult {
            value,
            regime,
            order,
            variant,
            terms,
            warning,
        }
    }

    /// Combine Dirichlet and Neumann results into a perfect-conductor one.
    fn pec(d: Self, n: Self) -> Self {
        let warning = d.warning.or(n.warning);
        Self::from_terms(
            d.regime,
            d.order,
            d.variant,
            vec![("dirichlet", d.value), ("neumann", n.value)],
            warning,
        )
    }
}

/// ζ at the fixed regular arguments used by the closed forms.
fn zeta(s: f64) -> f64 {
    riemann_zeta(s).expect("zeta argument is fixed and regular")
}

fn warning_for(sys: &CylinderPlate) -> Option<&'static str> {
    if sys.eps() > EXTRAPOLATION_EPS {
        Some(EXTRAPOLATION_WARNING)
    } else {
        None
    }
}

/// First-order energy coefficient `c_E` in `E ≃ E₀(1 + c_E·eps)` at `T = 0`.
fn zero_t_energy_coeff(bc: BoundaryCondition) -> f64 {
    match bc {
        BoundaryCondition::Dirichlet => 7.0 / 36.0,
        BoundaryCondition::Neumann => 7.0 / 36.0 - 40.0 / (3.0 * PI * PI),
        BoundaryCondition::PerfectConductor => {
            unreachable!("perfect conductor handled by summation")
        }
    }
}

/// First-order force coefficient `c_F = (3/5)·c_E` in `F ≃ F₀(1 + c_F·eps)`.
fn zero_t_force_coeff(bc: BoundaryCondition) -> f64 {
    match bc {
        BoundaryCondition::Dirichlet => 7.0 / 60.0,
        BoundaryCondition::Neumann => 7.0 / 60.0 - 8.0 / (PI * PI),
        BoundaryCondition::PerfectConductor => {
            unreachable!("perfect conductor handled by summation")
        }
    }
}

fn expansion(
    regime: AsymptoticRegime,
    order: ExpansionOrder,
    leading: f64,
    coeff: f64,
    eps: f64,
    warning: Option<&'static str>,
) -> AsymptoticResult {
    let terms = match order {
        ExpansionOrder::Leading => vec![("leading", leading)],
        ExpansionOrder::FirstOrder => {
            vec![("leading", leading), ("first-order", leading * coeff * eps)]
        }
    };
    AsymptoticResult::from_terms(regime, order, None, terms, warning)
}

/// Zero-temperature interaction energy,
/// `E ≃ −π³ L √r / (1920 √2 a^{5/2}) · (1 + c_E · eps)`.
///
/// `c_E = 7/36` (Dirichlet) or `7/36 − 40/(3π²)` (Neumann, negative);
/// the perfect-conductor value is the sum of the two scalar results.
/// Above `eps = 0.3` the result carries [`EXTRAPOLATION_WARNING`].
pub fn zero_t_energy(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    order: ExpansionOrder,
) -> AsymptoticResult {
    if let BoundaryCondition::PerfectConductor = bc {
        return AsymptoticResult::pec(
            zero_t_energy(sys, BoundaryCondition::Dirichlet, order),
            zero_t_energy(sys, BoundaryCondition::Neumann, order),
        );
    }
    let a = sys.a();
    let a_52 = a * a * fmath::sqrt(a);
    let leading = -PI * PI * PI * sys.length_l() * fmath::sqrt(sys.r()) / (1920.0 * SQRT_2 * a_52);
    expansion(
        AsymptoticRegime::ZeroT,
        order,
        leading,
        zero_t_energy_coeff(bc),
        sys.eps(),
        warning_for(sys),
    )
}

/// Zero-temperature force (`−∂E/∂a` of [`zero_t_energy`]),
/// `F ≃ −π³ L √r / (768 √2 a^{7/2}) · (1 + c_F · eps)` with `c_F = (3/5)·c_E`.
///
/// The `a^{-7/2}` power is fixed by differentiating the `a^{-5/2}` energy;
/// `c_F = 7/60` (Dirichlet) or `7/60 − 8/π²` (Neumann).
pub fn zero_t_force(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    order: ExpansionOrder,
) -> AsymptoticResult {
    if let BoundaryCondition::PerfectConductor = bc {
        return AsymptoticResult::pec(
            zero_t_force(sys, BoundaryCondition::Dirichlet, order),
            zero_t_force(sys, BoundaryCondition::Neumann, order),
        );
    }
    let a = sys.a();
    let a_72 = a * a * a * fmath::sqrt(a);
    let leading = -PI * PI * PI * sys.length_l() * fmath::sqrt(sys.r()) / (768.0 * SQRT_2 * a_72);
    expansion(
        AsymptoticRegime::ZeroT,
        order,
        leading,
        zero_t_force_coeff(bc),
        sys.eps(),
        warning_for(sys),
    )
}

/// Medium-temperature (`aT ≪ 1 ≪ rT`) thermal correction: the first two
/// terms of the half-integer-power series, identical for Dirichlet and
/// Neumann at these orders (double the result for a perfect conductor).
///
/// Energy: `ΔE ≃ −ζ(5/2)ζ(3/2) L√r T^{5/2} / (4√2π)
///              − 3 ζ(1/2)ζ(7/2) eps·L r^{3/2} T^{7/2} / (4√2π)`.
///
/// Force (`−∂/∂a` of the energy series, term by term):
/// `ΔF ≃ +3 ζ(1/2)ζ(7/2) L√r T^{7/2} / (4√2π)
///       − 15 ζ(−1/2)ζ(9/2) eps·L r^{3/2} T^{9/2} / (4√2π)`.
///
/// Since `ζ(1/2) < 0`, both leading coefficients are negative
/// (≈ −0.1972 for energy, ≈ −0.2778 for force at `L = r = 1`), while the
/// force's second term is positive (≈ +0.1851 · eps·r^{3/2}T^{9/2}·L).
pub fn medium_t_thermal_correction(sys: &CylinderPlate, quantity: Quantity) -> AsymptoticResult {
    let l = sys.length_l();
    let r = sys.r();
    let t = sys.t();
    let eps = sys.eps();
    let sqrt_r = fmath::sqrt(r);
    let norm = 4.0 * SQRT_2 * PI;
    let terms = match quantity {
        Quantity::Energy => {
            let t1 = -zeta(2.5) * zeta(1.5) * l * sqrt_r * fmath::powf(t, 2.5) / norm;
            let t2 =
                -3.0 * zeta(0.5) * zeta(3.5) * eps * l * r * sqrt_r * fmath::powf(t, 3.5) / norm;
            vec![("leading", t1), ("next-order", t2)]
        }
        Quantity::Force => {
            let t1 = 3.0 * zeta(0.5) * zeta(3.5) * l * sqrt_r * fmath::powf(t, 3.5) / norm;
            let t2 =
                -15.0 * zeta(-0.5) * zeta(4.5) * eps * l * r * sqrt_r * fmath::powf(t, 4.5) / norm;
            vec![("leading", t1), ("next-order", t2)]
        }
    };
    AsymptoticResult::from_terms(
        AsymptoticRegime::MediumT,
        ExpansionOrder::FirstOrder,
        None,
        terms,
        None,
    )
}

/// Medium-temperature first-order (in `eps`) thermal corrections, which are
/// boundary-condition dependent and a factor `1/(rT)` below the terms of
/// [`medium_t_thermal_correction`].
///
/// Energy (two displayed terms; `B_bc` is `2ζ(1/2) − ζ(5/2)` for Dirichlet
/// and `18ζ(1/2) − ζ(5/2)` for Neumann, `C_bc` is `10ζ(−1/2) + ζ(3/2)` and
/// `−6ζ(−1/2) + ζ(3/2)` respectively):
///
/// `ΔE¹ ≃ −ζ(−1/2)·B_bc · L T^{3/2} / (24√2 √r)
///        + ζ(−3/2)·C_bc · eps·π L √r T^{5/2} / (6√2)`.
///
/// Force (single displayed term):
/// `ΔF¹ ≃ −C_bc · π L T^{5/2} / (6√2 √r)`
/// (≈ −0.1975 Dirichlet, ≈ −1.4290 Neumann at `L = r = 1`).
///
/// The two expansions come from independent residue evaluations: the force
/// term is not the literal `−∂/∂a` of the displayed energy terms (that
/// derivative would carry the extra `ζ(−3/2)` factor of the energy's
/// second term). Both are evaluated exactly as derived.
pub fn medium_t_first_order(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    quantity: Quantity,
) -> AsymptoticResult {
    if let BoundaryCondition::PerfectConductor = bc {
        return AsymptoticResult::pec(
            medium_t_first_order(sys, BoundaryCondition::Dirichlet, quantity),
            medium_t_first_order(sys, BoundaryCondition::Neumann, quantity),
        );
    }
    let l = sys.length_l();
    let r = sys.r();
    let t = sys.t();
    let eps = sys.eps();
    let sqrt_r = fmath::sqrt(r);
    let (bracket_low, bracket_high) = match bc {
        BoundaryCondition::Dirichlet => {
            (2.0 * zeta(0.5) - zeta(2.5), 10.0 * zeta(-0.5) + zeta(1.5))
        }
        BoundaryCondition::Neumann => (18.0 * zeta(0.5) - zeta(2.5), -6.0 * zeta(-0.5) + zeta(1.5)),
        BoundaryCondition::PerfectConductor => unreachable!(),
    };
    let terms = match quantity {
        Quantity::Energy => {
            let t1 = -zeta(-0.5) * bracket_low * l * fmath::powf(t, 1.5) / (24.0 * SQRT_2 * sqrt_r);
            let t2 = zeta(-1.5) * bracket_high * eps * PI * l * sqrt_r * fmath::powf(t, 2.5)
                / (6.0 * SQRT_2);
            vec![("leading", t1), ("next-order", t2)]
        }
        Quantity::Force => {
            let f = -bracket_high * PI * l * fmath::powf(t, 2.5) / (6.0 * SQRT_2 * sqrt_r);
            vec![("leading", f)]
        }
    };
    AsymptoticResult::from_terms(
        AsymptoticRegime::MediumT,
        ExpansionOrder::FirstOrder,
        None,
        terms,
        None,
    )
}

/// First-order coefficient of the classical (high-temperature) bracket.
fn classical_coeff(
    bc: BoundaryCondition,
    variant: SummationVariant,
    quantity: Quantity,
    eps: f64,
) -> f64 {
    let z3 = zeta(3.0);
    match (bc, quantity) {
        (BoundaryCondition::Dirichlet, Quantity::Energy) => match variant {
            SummationVariant::ResidueFirst => 0.25,
            SummationVariant::SumFirst => 0.25 - 1.0 / (2.0 * z3),
        },
        (BoundaryCondition::Dirichlet, Quantity::Force) => match variant {
            SummationVariant::ResidueFirst => 1.0 / 12.0,
            SummationVariant::SumFirst => 1.0 / 12.0 - 1.0 / (6.0 * z3),
        },
        // The Neumann image sum diverges unless performed first, so its
        // bracket is the same for both variants and carries a log in eps.
        (BoundaryCondition::Neumann, Quantity::Energy) => {
            (2.0 * fmath::ln(eps) + z3 / 4.0 + 8.0 * LN_2 - 2.0 * EULER_GAMMA + 0.5) / z3
        }
        (BoundaryCondition::Neumann, Quantity::Force) => {
            1.0 / 12.0
                + (2.0 / 3.0 * fmath::ln(eps) + 8.0 / 3.0 * LN_2
                    - 2.0 / 3.0 * EULER_GAMMA
                    - 7.0 / 6.0)
                    / z3
        }
        (BoundaryCondition::PerfectConductor, _) => {
            unreachable!("perfect conductor handled by summation")
        }
    }
}

/// High-temperature classical term (linear in `T`),
/// `E ≃ −ζ(3) L T √r / (16√2 a^{3/2}) · (1 + c·eps)` and
/// `F ≃ −3ζ(3) L T √r / (32√2 a^{5/2}) · (1 + c·eps)`.
///
/// The Dirichlet first-order coefficient depends on `variant`
/// (`c_F = 1/12` for [`SummationVariant::ResidueFirst`],
/// `1/12 − 1/(6ζ(3))` for [`SummationVariant::SumFirst`]); the Neumann
/// bracket contains a `ln eps` term and is variant-independent. The leading
/// term never depends on the variant.
pub fn high_t_classical(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    order: ExpansionOrder,
    variant: SummationVariant,
    quantity: Quantity,
) -> AsymptoticResult {
    if let BoundaryCondition::PerfectConductor = bc {
        return AsymptoticResult::pec(
            high_t_classical(sys, BoundaryCondition::Dirichlet, order, variant, quantity),
            high_t_classical(sys, BoundaryCondition::Neumann, order, variant, quantity),
        );
    }
    let a = sys.a();
    let eps = sys.eps();
    let prefactor = sys.length_l() * sys.t() * zeta(3.0) * fmath::sqrt(sys.r());
    let leading = match quantity {
        Quantity::Energy => -prefactor / (16.0 * SQRT_2 * a * fmath::sqrt(a)),
        Quantity::Force => -3.0 * prefactor / (32.0 * SQRT_2 * a * a * fmath::sqrt(a)),
    };
    let terms = match order {
        ExpansionOrder::Leading => vec![("leading", leading)],
        ExpansionOrder::FirstOrder => {
            let coeff = classical_coeff(bc, variant, quantity, eps);
            vec![("leading", leading), ("first-order", leading * coeff * eps)]
        }
    };
    AsymptoticResult::from_terms(AsymptoticRegime::HighT, order, Some(variant), terms, None)
}
