//! Finite-temperature Casimir interaction of an infinite cylinder parallel to
//! a plate, for a massless scalar field with Dirichlet or Neumann boundary
//! conditions (a perfect conductor is the sum of the two).
//!
//! Three independent routes to the interaction energy and force are provided:
//!
//! * [`exact`] — the functional-determinant ("scattering") representation.
//!   The interaction free energy per Matsubara frequency is `tr ln(1 - M(ξ))`
//!   for an explicit matrix `M` built from modified Bessel functions; the
//!   energy is a frequency integral (zero temperature) or a Matsubara sum
//!   (finite temperature) over that quantity.
//! * [`pfa`] — the proximity force approximation, which integrates the
//!   parallel-plate energy/force densities of [`parallel_plate`] over the
//!   cylinder's surface, plus its closed-form expansions.
//! * [`asymptotics`] — closed-form asymptotic formulas for the short-distance
//!   (zero-temperature), intermediate-temperature and high-temperature
//!   (classical) regimes, with explicit first-order corrections in the
//!   aspect ratio ε = a/r.
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes through
//! [`libm`]. Everything is deterministic: fixed accumulation orders, no
//! threading, no global state.
//!
//! Geometry conventions: cylinder radius `r`, cylinder length `L`, closest
//! surface-to-surface separation `a`, center-to-plate distance `H = a + r`,
//! aspect ratio `ε = a/r`. Natural units `ħ = c = k_B = 1` throughout, so the
//! temperature enters only through the Matsubara frequencies `ξ_l = 2πlT`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod error;
pub mod exact;
pub(crate) mod fmath;
pub mod geometry;
pub mod linalg;
pub mod parallel_plate;
pub mod pfa;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use geometry::{
    BoundaryCondition, ConvergenceReport, CylinderPlate, EnergyResult, Method, NumericsConfig,
    PlateGap, Quantity,
};
