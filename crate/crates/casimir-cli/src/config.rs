//! Run description: defaults, config-file parsing, flag overlay, and
//! validation.
//!
//! A run is described by a [`RunSpec`]. It can be assembled from up to two
//! layers — a flat `key = value` config file and command-line flags — with
//! flags taking precedence; [`PartialSpec`] is one such layer. Validation
//! errors are [`ConfigError`]s and map to exit code 2 in the binary.

use std::fmt;
use std::path::PathBuf;

use casimir_core::asymptotics::SummationVariant;
use casimir_core::{BoundaryCondition, Method};

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Requested asymptotic regime; `Auto` selects from the `aT`/`rT`
/// diagnostics with threshold 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeChoice {
    Auto,
    Zero,
    Medium,
    High,
}

/// A configuration error (bad flag value, contradictory options, malformed
/// config file). The binary reports these on stderr and exits with code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// One layer of configuration; every field optional. Layers merge with
/// "later wins" semantics (flags over file over defaults).
#[derive(Debug, Clone, Default)]
pub struct PartialSpec {
    pub a: Option<f64>,
    pub a_sweep: Option<Vec<f64>>,
    pub r: Option<f64>,
    pub length: Option<f64>,
    pub temperature: Option<f64>,
    pub t_sweep: Option<Vec<f64>>,
    pub bc: Option<BoundaryCondition>,
    pub methods: Option<Vec<Method>>,
    pub regime: Option<RegimeChoice>,
    pub variant: Option<SummationVariant>,
    pub mmax: Option<usize>,
    pub lmax: Option<usize>,
    pub rel_tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// Fully resolved, validated description of a run.
#[derive(Debug, Clone)]
pub struct RunSpec {
    /// Separations to compute (singleton unless a sweep was requested).
    pub a_values: Vec<f64>,
    pub r: f64,
    pub length: f64,
    /// Temperatures to compute (singleton unless a sweep was requested).
    pub t_values: Vec<f64>,
    pub bc: BoundaryCondition,
    /// Methods in user order, deduplicated; never empty.
    pub methods: Vec<Method>,
    pub regime: RegimeChoice,
    pub variant: SummationVariant,
    pub mmax: Option<usize>,
    pub lmax: Option<usize>,
    pub rel_tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn parse_bc(s: &str) -> Result<BoundaryCondition, ConfigError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "dirichlet" => Ok(BoundaryCondition::Dirichlet),
        "neumann" => Ok(BoundaryCondition::Neumann),
        "pec" => Ok(BoundaryCondition::PerfectConductor),
        other => Err(err(format!(
            "unknown boundary condition '{other}' (expected dirichlet, neumann, or pec)"
        ))),
    }
}

pub fn bc_label(bc: BoundaryCondition) -> &'static str {
    match bc {
        BoundaryCondition::Dirichlet => "dirichlet",
        BoundaryCondition::Neumann => "neumann",
        BoundaryCondition::PerfectConductor => "pec",
    }
}

pub fn parse_methods(s: &str) -> Result<Vec<Method>, ConfigError> {
    let mut methods = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let m = match tok.to_ascii_lowercase().as_str() {
            "exact" => Method::Exact,
            "pfa" => Method::Pfa,
            "asymptotic" => Method::Asymptotic,
            other => {
                return Err(err(format!(
                    "unknown method '{other}' (expected exact, pfa, or asymptotic)"
                )))
            }
        };
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    Ok(methods)
}

pub fn method_label(m: Method) -> &'static str {
    match m {
        Method::Exact => "exact",
        Method::Pfa => "pfa",
        Method::Asymptotic => "asymptotic",
    }
}

pub fn parse_regime(s: &str) -> Result<RegimeChoice, ConfigError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "auto" => Ok(RegimeChoice::Auto),
        "zero" => Ok(RegimeChoice::Zero),
        "medium" => Ok(RegimeChoice::Medium),
        "high" => Ok(RegimeChoice::High),
        other => Err(err(format!(
            "unknown regime '{other}' (expected auto, zero, medium, or high)"
        ))),
    }
}

pub fn parse_variant(s: &str) -> Result<SummationVariant, ConfigError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "residue-first" => Ok(SummationVariant::ResidueFirst),
        "sum-first" => Ok(SummationVariant::SumFirst),
        other => Err(err(format!(
            "unknown variant '{other}' (expected residue-first or sum-first)"
        ))),
    }
}

pub fn parse_format(s: &str) -> Result<Format, ConfigError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(err(format!(
            "unknown format '{other}' (expected csv or json)"
        ))),
    }
}

pub fn parse_f64(key: &str, s: &str) -> Result<f64, ConfigError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| err(format!("{key}: '{s}' is not a number")))
}

pub fn parse_list(key: &str, s: &str) -> Result<Vec<f64>, ConfigError> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        out.push(parse_f64(key, tok)?);
    }
    if out.is_empty() {
        return Err(err(format!("{key}: empty list")));
    }
    Ok(out)
}

fn parse_usize(key: &str, s: &str) -> Result<usize, ConfigError> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| err(format!("{key}: '{s}' is not a non-negative integer")))
}

impl PartialSpec {
    /// Parse a flat `key = value` config file (`#` starts a comment; keys
    /// accept both `-` and `_` as word separators and match the long flag
    /// names).
    pub fn from_config_text(text: &str) -> Result<Self, ConfigError> {
        let mut spec = PartialSpec::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("line {}: expected key = value", idx + 1)))?;
            let key = key.trim().to_ascii_lowercase().replace('_', "-");
            let value = value.trim();
            match key.as_str() {
                "a" => spec.a = Some(parse_f64("a", value)?),
                "a-sweep" => spec.a_sweep = Some(parse_list("a-sweep", value)?),
                "r" => spec.r = Some(parse_f64("r", value)?),
                "length" => spec.length = Some(parse_f64("length", value)?),
                "temperature" => spec.temperature = Some(parse_f64("temperature", value)?),
                "t-sweep" => spec.t_sweep = Some(parse_list("t-sweep", value)?),
                "bc" => spec.bc = Some(parse_bc(value)?),
                "methods" => spec.methods = Some(parse_methods(value)?),
                "regime" => spec.regime = Some(parse_regime(value)?),
                "variant" => spec.variant = Some(parse_variant(value)?),
                "mmax" => spec.mmax = Some(parse_usize("mmax", value)?),
                "lmax" => spec.lmax = Some(parse_usize("lmax", value)?),
                "rel-tol" => spec.rel_tol = Some(parse_f64("rel-tol", value)?),
                "format" => spec.format = Some(parse_format(value)?),
                "out" => spec.out = Some(PathBuf::from(value)),
                other => return Err(err(format!("line {}: unknown key '{other}'", idx + 1))),
            }
        }
        Ok(spec)
    }

    /// Overlay `over` on top of `self` (fields set in `over` win).
    pub fn merged_with(mut self, over: PartialSpec) -> PartialSpec {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(
            a,
            a_sweep,
            r,
            length,
            temperature,
            t_sweep,
            bc,
            methods,
            regime,
            variant,
            mmax,
            lmax,
            rel_tol,
            format,
            out
        );
        self
    }

    /// Validate and fill defaults, producing a runnable [`RunSpec`].
    pub fn resolve(self) -> Result<RunSpec, ConfigError> {
        let a_values = match (self.a, self.a_sweep) {
            (Some(_), Some(_)) => return Err(err("pass either a or a-sweep, not both")),
            (Some(a), None) => vec![a],
            (None, Some(list)) => {
                validate_sweep("a-sweep", &list)?;
                list
            }
            (None, None) => return Err(err("separation a (or a-sweep) is required")),
        };
        for &a in &a_values {
            if !(a > 0.0) || !a.is_finite() {
                return Err(err("separation a must be positive and finite"));
            }
        }
        let t_values = match (self.temperature, self.t_sweep) {
            (Some(_), Some(_)) => return Err(err("pass either temperature or t-sweep, not both")),
            (Some(t), None) => {
                if !(t >= 0.0) || !t.is_finite() {
                    return Err(err("temperature must be non-negative and finite"));
                }
                vec![t]
            }
            (None, Some(list)) => {
                validate_sweep("t-sweep", &list)?;
                list
            }
            (None, None) => vec![0.0],
        };
        let r = self.r.unwrap_or(1.0);
        if !(r > 0.0) || !r.is_finite() {
            return Err(err("radius r must be positive and finite"));
        }
        let length = self.length.unwrap_or(1.0);
        if !(length > 0.0) || !length.is_finite() {
            return Err(err("length must be positive and finite"));
        }
        let methods = self
            .methods
            .unwrap_or_else(|| vec![Method::Exact, Method::Pfa, Method::Asymptotic]);
        if methods.is_empty() {
            return Err(err("at least one method is required"));
        }
        if let Some(tol) = self.rel_tol {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(err("rel-tol must lie in (0, 1)"));
            }
        }
        if self.mmax == Some(0) {
            return Err(err("mmax must be at least 1"));
        }
        Ok(RunSpec {
            a_values,
            r,
            length,
            t_values,
            bc: self.bc.unwrap_or(BoundaryCondition::Dirichlet),
            methods,
            regime: self.regime.unwrap_or(RegimeChoice::Auto),
            variant: self.variant.unwrap_or(SummationVariant::ResidueFirst),
            mmax: self.mmax,
            lmax: self.lmax,
            rel_tol: self.rel_tol,
            format: self.format.unwrap_or(Format::Csv),
            out: self.out,
        })
    }
}

fn validate_sweep(key: &str, list: &[f64]) -> Result<(), ConfigError> {
    for &v in list {
        if !(v > 0.0) || !v.is_finite() {
            return Err(err(format!("{key}: entries must be positive and finite")));
        }
    }
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(err(format!("{key}: entries must be strictly increasing")));
    }
    Ok(())
}
