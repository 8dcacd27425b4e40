//! Library half of the `casimir` command-line tool.
//!
//! The binary is a thin wrapper around these modules:
//!
//! * [`config`] — run description ([`config::RunSpec`]), flag/config-file
//!   merging, and validation;
//! * [`driver`] — executes a [`config::RunSpec`] into comparison rows, one per
//!   (geometry point, method) pair, with per-row failure capture;
//! * [`output`] — deterministic CSV and JSON serialization of those rows;
//! * [`fit`] — least-squares extraction of first-order correction
//!   coefficients from sweep results.

pub mod config;
pub mod driver;
pub mod fit;
pub mod output;

pub use config::{ConfigError, Format, PartialSpec, RegimeChoice, RunSpec};
pub use driver::{run, ComparisonRow, RowStatus, RunOutput};
pub use fit::fit_correction;
