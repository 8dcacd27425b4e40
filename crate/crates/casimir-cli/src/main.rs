//! `casimir` — cylinder–plate Casimir interaction calculator.
//!
//! Exit codes: 0 on success, 1 when every requested row failed to compute,
//! 2 on configuration errors (bad flags, contradictory options, malformed
//! config file).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use casimir_cli::config::{
    self, parse_bc, parse_format, parse_list, parse_methods, parse_regime, parse_variant,
    ConfigError, PartialSpec,
};
use casimir_cli::{driver, output};

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir interaction energy and force for a cylinder parallel to a plate",
    long_about = "Computes the finite-temperature Casimir interaction between an \
infinite cylinder and a plate for scalar Dirichlet/Neumann fields and the perfect \
conductor, by three routes: the exact scattering determinant, the proximity force \
approximation, and closed-form asymptotic expansions."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute energy/force rows over the requested points and methods.
    Compute(Box<ComputeArgs>),
}

#[derive(Args)]
struct ComputeArgs {
    /// Surface-to-surface separation between cylinder and plate.
    #[arg(long)]
    a: Option<f64>,
    /// Comma-separated list of separations (strictly increasing, positive).
    #[arg(long, value_name = "LIST")]
    a_sweep: Option<String>,
    /// Cylinder radius (default 1).
    #[arg(long)]
    r: Option<f64>,
    /// Cylinder length, used as an overall scale factor (default 1).
    #[arg(long)]
    length: Option<f64>,
    /// Temperature in natural units (default 0).
    #[arg(long)]
    temperature: Option<f64>,
    /// Comma-separated list of temperatures (strictly increasing, positive).
    #[arg(long, value_name = "LIST")]
    t_sweep: Option<String>,
    /// Boundary condition: dirichlet, neumann, or pec (default dirichlet).
    #[arg(long)]
    bc: Option<String>,
    /// Comma-separated methods: exact, pfa, asymptotic (default all three).
    #[arg(long)]
    methods: Option<String>,
    /// Asymptotic regime: auto, zero, medium, or high (default auto).
    #[arg(long)]
    regime: Option<String>,
    /// Classical-term summation variant: residue-first or sum-first.
    #[arg(long)]
    variant: Option<String>,
    /// Cap on the partial-wave truncation order for the exact method.
    #[arg(long)]
    mmax: Option<usize>,
    /// Cap on the number of thermal frequencies for the exact method.
    #[arg(long)]
    lmax: Option<usize>,
    /// Relative tolerance for the exact method's convergence loops.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Output encoding: csv or json (default csv).
    #[arg(long)]
    format: Option<String>,
    /// Output file path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn flags_to_partial(args: &ComputeArgs) -> Result<PartialSpec, ConfigError> {
    Ok(PartialSpec {
        a: args.a,
        a_sweep: args
            .a_sweep
            .as_deref()
            .map(|s| parse_list("a-sweep", s))
            .transpose()?,
        r: args.r,
        length: args.length,
        temperature: args.temperature,
        t_sweep: args
            .t_sweep
            .as_deref()
            .map(|s| parse_list("t-sweep", s))
            .transpose()?,
        bc: args.bc.as_deref().map(parse_bc).transpose()?,
        methods: args.methods.as_deref().map(parse_methods).transpose()?,
        regime: args.regime.as_deref().map(parse_regime).transpose()?,
        variant: args.variant.as_deref().map(parse_variant).transpose()?,
        mmax: args.mmax,
        lmax: args.lmax,
        rel_tol: args.rel_tol,
        format: args.format.as_deref().map(parse_format).transpose()?,
        out: args.out.clone(),
    })
}

fn build_spec(args: &ComputeArgs) -> Result<config::RunSpec, ConfigError> {
    let file_layer = match &args.config {
        None => PartialSpec::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                ConfigError(format!("cannot read config file {}: {e}", path.display()))
            })?;
            PartialSpec::from_config_text(&text)?
        }
    };
    let flag_layer = flags_to_partial(args)?;
    file_layer.merged_with(flag_layer).resolve()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Compute(args) = cli.command;
    let spec = match build_spec(&args) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = driver::run(&spec);
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let payload = match spec.format {
        config::Format::Csv => output::to_csv(&result.rows),
        config::Format::Json => output::to_json(&result.rows),
    };
    if let Err(e) = output::write_output(&payload, spec.out.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if result.all_failed() {
        eprintln!("error: every requested row failed to compute");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
