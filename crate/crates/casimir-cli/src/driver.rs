//! Executes a [`RunSpec`] into comparison rows.
//!
//! One row is produced per (separation, temperature, method) triple, in
//! input order (separations outermost, then temperatures, then methods in
//! the order the user listed them). Failures are captured per row — a
//! failing point never aborts the run — and regime-applicability notes are
//! collected as advisory warnings for stderr.

use serde::Serialize;

use casimir_core::asymptotics::{self, AsymptoticResult, ExpansionOrder, SummationVariant};
use casimir_core::exact;
use casimir_core::pfa;
use casimir_core::{
    BoundaryCondition, ConvergenceReport, CylinderPlate, Method, NumericsConfig, Quantity,
};

use crate::config::{bc_label, method_label, RegimeChoice, RunSpec};

/// Outcome of one row's computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Failed(String),
}

impl From<RowStatus> for String {
    fn from(s: RowStatus) -> String {
        match s {
            RowStatus::Ok => "ok".to_owned(),
            RowStatus::Failed(msg) => format!("failed:{msg}"),
        }
    }
}

/// One (point, method) result with echoed inputs and diagnostics.
///
/// Serialized field names match the CSV header columns exactly.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub a: f64,
    pub r: f64,
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub eps: f64,
    #[serde(rename = "aT")]
    pub a_t: f64,
    #[serde(rename = "rT")]
    pub r_t: f64,
    pub bc: &'static str,
    pub method: &'static str,
    pub energy: Option<f64>,
    pub force: Option<f64>,
    pub ratio_to_pfa: Option<f64>,
    pub mmax_used: Option<usize>,
    pub lmax_used: Option<usize>,
    pub delta: Option<f64>,
    #[serde(serialize_with = "serialize_status")]
    pub status: RowStatus,
}

fn serialize_status<S: serde::Serializer>(s: &RowStatus, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&String::from(s.clone()))
}

/// All rows of a run plus advisory warnings (regime applicability and
/// expansion trust-region notes) destined for stderr.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub rows: Vec<ComparisonRow>,
    pub warnings: Vec<String>,
}

impl RunOutput {
    /// True when the run produced rows and every one of them failed.
    pub fn all_failed(&self) -> bool {
        !self.rows.is_empty()
            && self
                .rows
                .iter()
                .all(|r| matches!(r.status, RowStatus::Failed(_)))
    }
}

/// Per-method computation result before row assembly.
struct MethodOutcome {
    energy: Option<f64>,
    force: Option<f64>,
    report: Option<ConvergenceReport>,
    error: Option<String>,
}

/// Concrete regime labels from the `aT`, `rT` diagnostics (threshold 1):
/// `aT ≪ rT ≪ 1` is the zero-temperature window, `aT ≪ 1 ≪ rT` the
/// medium-temperature one, `1 ≪ aT` the classical one.
fn diagnose_regime(a_t: f64, r_t: f64) -> RegimeChoice {
    if a_t >= 1.0 {
        RegimeChoice::High
    } else if r_t >= 1.0 {
        RegimeChoice::Medium
    } else {
        RegimeChoice::Zero
    }
}

fn regime_name(r: RegimeChoice) -> &'static str {
    match r {
        RegimeChoice::Auto => "auto",
        RegimeChoice::Zero => "zero",
        RegimeChoice::Medium => "medium",
        RegimeChoice::High => "high",
    }
}

/// Execute a resolved [`RunSpec`]: every (separation, temperature, method)
/// combination, in input order.
pub fn run(spec: &RunSpec) -> RunOutput {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for &a in &spec.a_values {
        for &t in &spec.t_values {
            compute_point(spec, a, t, &mut rows, &mut warnings);
        }
    }
    RunOutput { rows, warnings }
}

fn push_warning(warnings: &mut Vec<String>, msg: String) {
    if !warnings.contains(&msg) {
        warnings.push(msg);
    }
}

fn compute_point(
    spec: &RunSpec,
    a: f64,
    t: f64,
    rows: &mut Vec<ComparisonRow>,
    warnings: &mut Vec<String>,
) {
    let base = ComparisonRow {
        a,
        r: spec.r,
        length: spec.length,
        t,
        eps: a / spec.r,
        a_t: a * t,
        r_t: spec.r * t,
        bc: bc_label(spec.bc),
        method: "",
        energy: None,
        force: None,
        ratio_to_pfa: None,
        mmax_used: None,
        lmax_used: None,
        delta: None,
        status: RowStatus::Ok,
    };
    let sys = match CylinderPlate::new(a, spec.r, spec.length, t) {
        Ok(sys) => sys,
        Err(e) => {
            for &m in &spec.methods {
                let mut row = base.clone();
                row.method = method_label(m);
                row.status = RowStatus::Failed(e.to_string());
                rows.push(row);
            }
            return;
        }
    };

    // PFA is computed once per point (needed both for its own row and for
    // the ratio_to_pfa column of the other methods).
    let pfa_outcome = if spec.methods.contains(&Method::Pfa) {
        Some(compute_pfa(&sys, spec.bc))
    } else {
        None
    };
    let pfa_energy = pfa_outcome.as_ref().and_then(|o| o.energy);

    for &m in &spec.methods {
        let outcome = match m {
            Method::Exact => compute_exact(&sys, spec, t),
            Method::Pfa => {
                let o = pfa_outcome.as_ref().expect("pfa outcome precomputed");
                MethodOutcome {
                    energy: o.energy,
                    force: o.force,
                    report: None,
                    error: o.error.clone(),
                }
            }
            Method::Asymptotic => compute_asymptotic(&sys, spec, warnings),
        };
        let mut row = base.clone();
        row.method = method_label(m);
        row.energy = outcome.energy;
        row.force = outcome.force;
        row.ratio_to_pfa = match (m, outcome.energy, pfa_energy) {
            (Method::Pfa, Some(_), _) => Some(1.0),
            (_, Some(e), Some(p)) if p != 0.0 => Some(e / p),
            _ => None,
        };
        if let Some(rep) = outcome.report {
            row.mmax_used = Some(rep.m_max_used);
            row.lmax_used = Some(rep.l_max_used);
            row.delta = rep
                .last_doubling_delta
                .is_finite()
                .then_some(rep.last_doubling_delta);
        }
        row.status = match outcome.error {
            None => RowStatus::Ok,
            Some(msg) => RowStatus::Failed(msg),
        };
        rows.push(row);
    }
}

fn numerics(spec: &RunSpec) -> NumericsConfig {
    let mut cfg = NumericsConfig::default();
    if let Some(tol) = spec.rel_tol {
        cfg = cfg.with_rel_tol(tol);
    }
    if let Some(m) = spec.mmax {
        cfg.m_cap = m;
    }
    if let Some(l) = spec.lmax {
        cfg.l_cap = l;
    }
    cfg
}

fn compute_exact(sys: &CylinderPlate, spec: &RunSpec, t: f64) -> MethodOutcome {
    let cfg = numerics(spec);
    let mut error = None;
    let mut report: Option<ConvergenceReport> = None;
    let merge = |rep: ConvergenceReport, report: &mut Option<ConvergenceReport>| {
        *report = Some(match report.take() {
            None => rep,
            Some(prev) => ConvergenceReport {
                m_max_used: prev.m_max_used.max(rep.m_max_used),
                l_max_used: prev.l_max_used.max(rep.l_max_used),
                last_doubling_delta: prev.last_doubling_delta.max(rep.last_doubling_delta),
                quadrature_estimated_error: prev.quadrature_estimated_error
                    + rep.quadrature_estimated_error,
            },
        });
    };
    let energy = {
        let r = if t == 0.0 {
            exact::energy_zero_t(sys, spec.bc, &cfg)
        } else {
            exact::energy_finite_t(sys, spec.bc, &cfg)
        };
        match r {
            Ok((v, rep)) => {
                merge(rep, &mut report);
                Some(v)
            }
            Err(e) => {
                error = Some(e.to_string());
                None
            }
        }
    };
    let force = match exact::force_exact_with_report(sys, spec.bc, t, &cfg) {
        Ok((v, rep)) => {
            merge(rep, &mut report);
            Some(v)
        }
        Err(e) => {
            error.get_or_insert_with(|| e.to_string());
            None
        }
    };
    MethodOutcome {
        energy,
        force,
        report,
        error,
    }
}

/// PFA both for energy and force. The leading-order PFA strip integral is
/// identical for the Dirichlet and Neumann scalars; the perfect conductor
/// is their sum (a doubling).
fn compute_pfa(sys: &CylinderPlate, bc: BoundaryCondition) -> MethodOutcome {
    let scale = match bc {
        BoundaryCondition::PerfectConductor => 2.0,
        _ => 1.0,
    };
    let mut error = None;
    let energy = match pfa::pfa_energy(sys, pfa::DEFAULT_QUAD_TOL) {
        Ok(v) => Some(scale * v),
        Err(e) => {
            error = Some(e.to_string());
            None
        }
    };
    let force = match pfa::pfa_force(sys, pfa::DEFAULT_QUAD_TOL) {
        Ok(v) => Some(scale * v),
        Err(e) => {
            error.get_or_insert_with(|| e.to_string());
            None
        }
    };
    MethodOutcome {
        energy,
        force,
        report: None,
        error,
    }
}

fn compute_asymptotic(
    sys: &CylinderPlate,
    spec: &RunSpec,
    warnings: &mut Vec<String>,
) -> MethodOutcome {
    let diagnosed = diagnose_regime(sys.a() * sys.t(), sys.r() * sys.t());
    let effective = match spec.regime {
        RegimeChoice::Auto => diagnosed,
        explicit => {
            if explicit != diagnosed {
                push_warning(
                    warnings,
                    format!(
                        "regime '{}' requested at aT = {:.3e}, rT = {:.3e} (diagnostics suggest '{}'); proceeding as requested",
                        regime_name(explicit),
                        sys.a() * sys.t(),
                        sys.r() * sys.t(),
                        regime_name(diagnosed),
                    ),
                );
            }
            explicit
        }
    };
    let (energy_res, force_res) = asymptotic_pair(sys, spec.bc, effective, spec.variant);
    for res in [&energy_res, &force_res] {
        if let Some(w) = res.warning {
            push_warning(warnings, format!("a = {}, r = {}: {w}", sys.a(), sys.r()));
        }
    }
    MethodOutcome {
        energy: Some(energy_res.value),
        force: Some(force_res.value),
        report: None,
        error: None,
    }
}

/// Closed-form (energy, force) for one concrete regime.
///
/// * zero: first-order small-separation expansion of the vacuum terms;
/// * medium: vacuum terms plus the thermal-correction series (which is
///   boundary-condition independent at the orders carried, hence doubled
///   for the perfect conductor);
/// * high: classical term with the selected summation variant.
fn asymptotic_pair(
    sys: &CylinderPlate,
    bc: BoundaryCondition,
    regime: RegimeChoice,
    variant: SummationVariant,
) -> (AsymptoticResult, AsymptoticResult) {
    match regime {
        RegimeChoice::Zero | RegimeChoice::Auto => (
            asymptotics::zero_t_energy(sys, bc, ExpansionOrder::FirstOrder),
            asymptotics::zero_t_force(sys, bc, ExpansionOrder::FirstOrder),
        ),
        RegimeChoice::Medium => {
            let scale = match bc {
                BoundaryCondition::PerfectConductor => 2.0,
                _ => 1.0,
            };
            let mut e = asymptotics::zero_t_energy(sys, bc, ExpansionOrder::FirstOrder);
            let et = asymptotics::medium_t_thermal_correction(sys, Quantity::Energy);
            e.value += scale * et.value;
            let mut f = asymptotics::zero_t_force(sys, bc, ExpansionOrder::FirstOrder);
            let ft = asymptotics::medium_t_thermal_correction(sys, Quantity::Force);
            f.value += scale * ft.value;
            (e, f)
        }
        RegimeChoice::High => (
            asymptotics::high_t_classical(
                sys,
                bc,
                ExpansionOrder::FirstOrder,
                variant,
                Quantity::Energy,
            ),
            asymptotics::high_t_classical(
                sys,
                bc,
                ExpansionOrder::FirstOrder,
                variant,
                Quantity::Force,
            ),
        ),
    }
}
