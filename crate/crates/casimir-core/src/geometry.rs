//! Geometry, boundary conditions, and shared configuration/report types.

use crate::error::{Error, Result};

/// Boundary condition on both the cylinder and the plate.
///
/// For a perfectly conducting boundary the electromagnetic problem in this
/// geometry separates exactly into one Dirichlet and one Neumann scalar, so
/// [`BoundaryCondition::PerfectConductor`] quantities are computed as the
/// term-by-term sum of the two scalar problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
    PerfectConductor,
}

impl BoundaryCondition {
    /// Stable lowercase name, used by the CLI and in reports.
    pub fn name(self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
            BoundaryCondition::PerfectConductor => "pec",
        }
    }
}

/// Two parallel plates separated by a gap `d` at temperature `t`.
///
/// Used by the parallel-plate energy/force densities that feed the proximity
/// force approximation. Natural units: `d > 0`, `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateGap {
    d: f64,
    t: f64,
}

impl PlateGap {
    pub fn new(d: f64, t: f64) -> Result<Self> {
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::Domain("plate gap d must be positive and finite"));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(
                "temperature t must be non-negative and finite",
            ));
        }
        Ok(PlateGap { d, t })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// Cylinder-plate geometry at temperature `t`.
///
/// `a` is the closest separation between the cylinder surface and the plate,
/// `r` the cylinder radius and `length_l` its length (all lengths in the same
/// natural unit). The derived quantities are the center-to-plate distance
/// `h = a + r` and the aspect ratio `eps = a / r`; they are read-only so the
/// struct cannot be put into an inconsistent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderPlate {
    a: f64,
    r: f64,
    length_l: f64,
    t: f64,
}

impl CylinderPlate {
    pub fn new(a: f64, r: f64, length_l: f64, t: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Domain("separation a must be positive and finite"));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(
                "cylinder radius r must be positive and finite",
            ));
        }
        if !(length_l > 0.0) || !length_l.is_finite() {
            return Err(Error::Domain(
                "cylinder length L must be positive and finite",
            ));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(
                "temperature t must be non-negative and finite",
            ));
        }
        Ok(CylinderPlate { a, r, length_l, t })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn length_l(&self) -> f64 {
        self.length_l
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Center-to-plate distance `h = a + r`.
    pub fn h(&self) -> f64 {
        self.a + self.r
    }

    /// Aspect ratio `eps = a / r`.
    pub fn eps(&self) -> f64 {
        self.a / self.r
    }

    /// Copy with a different separation (radius, length, temperature kept).
    pub fn with_a(&self, a: f64) -> Result<Self> {
        CylinderPlate::new(a, self.r, self.length_l, self.t)
    }

    /// Copy with a different temperature.
    pub fn with_t(&self, t: f64) -> Result<Self> {
        CylinderPlate::new(self.a, self.r, self.length_l, t)
    }
}

/// Tuning knobs for the determinant engine.
///
/// `m_init` overrides the initial angular truncation order (the default is
/// the heuristic `ceil(10 / sqrt(eps))`); the order is then doubled until the
/// relative change of the result drops below `rel_tol` or `m_cap` is reached.
/// `l_cap` bounds the number of Matsubara terms, `series_tol` is the relative
/// cutoff for the parallel-plate double sums, and `quad_rel_factor` sets how
/// much tighter than `rel_tol` the frequency quadrature is run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig {
    pub m_init: Option<usize>,
    pub m_cap: usize,
    pub l_cap: usize,
    pub rel_tol: f64,
    pub quad_rel_factor: f64,
    pub series_tol: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            m_init: None,
            m_cap: 4096,
            l_cap: 100_000,
            rel_tol: 1e-6,
            quad_rel_factor: 1e-2,
            series_tol: 1e-14,
        }
    }
}

impl NumericsConfig {
    /// Same configuration with a different target tolerance.
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Same configuration with a fixed truncation order (no doubling).
    pub fn with_fixed_m(mut self, m: usize) -> Self {
        self.m_init = Some(m);
        self.m_cap = m;
        self
    }
}

/// Convergence diagnostics attached to determinant-engine results.
///
/// `last_doubling_delta` is the relative change produced by the final
/// doubling of the truncation order; it is `NaN` when the configuration
/// allowed only a single truncation order (fixed-m runs), and it exceeds
/// the requested tolerance when the run stopped at `m_cap` unconverged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub m_max_used: usize,
    pub l_max_used: usize,
    pub last_doubling_delta: f64,
    pub quadrature_estimated_error: f64,
}

impl ConvergenceReport {
    /// Whether the m-doubling loop met `rel_tol` (fixed-m runs report false).
    pub fn converged_to(&self, rel_tol: f64) -> bool {
        self.last_doubling_delta.is_finite() && self.last_doubling_delta < rel_tol
    }
}

/// Which physical quantity an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Energy,
    Force,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Energy => "energy",
            Quantity::Force => "force",
        }
    }
}

/// Which of the three computational routes produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Pfa,
    Asymptotic,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Pfa => "pfa",
            Method::Asymptotic => "asymptotic",
        }
    }
}

/// A computed energy (or force) with its provenance and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    pub method: Method,
    pub report: Option<ConvergenceReport>,
}
