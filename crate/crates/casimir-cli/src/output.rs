//! Row serialization: CSV with a fixed header, or JSON.
//!
//! Both encodings print floating-point values with 17 significant digits
//! (`{:.16e}`), enough to round-trip an f64 exactly, so the two formats are
//! numerically identical and reruns are byte-identical.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::driver::{ComparisonRow, RowStatus};

/// The fixed CSV column set, in order.
pub const CSV_HEADER: &str =
    "a,r,L,T,eps,aT,rT,bc,method,energy,force,ratio_to_pfa,mmax_used,lmax_used,delta,status";

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn fmt_opt_usize(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Status cell: `ok`, or `failed:<message>` with any commas in the message
/// replaced so the CSV stays single-token per cell.
fn fmt_status(s: &RowStatus) -> String {
    String::from(s.clone()).replace(',', ";")
}

/// Encode rows as CSV (fixed header above, one line per row).
pub fn to_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let cells = [
            fmt_f64(row.a),
            fmt_f64(row.r),
            fmt_f64(row.length),
            fmt_f64(row.t),
            fmt_f64(row.eps),
            fmt_f64(row.a_t),
            fmt_f64(row.r_t),
            row.bc.to_owned(),
            row.method.to_owned(),
            fmt_opt_f64(row.energy),
            fmt_opt_f64(row.force),
            fmt_opt_f64(row.ratio_to_pfa),
            fmt_opt_usize(row.mmax_used),
            fmt_opt_usize(row.lmax_used),
            fmt_opt_f64(row.delta),
            fmt_status(&row.status),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Encode rows as pretty-printed JSON: `{"rows": [...]}` with the same
/// field names as the CSV columns; absent diagnostics are `null`.
pub fn to_json(rows: &[ComparisonRow]) -> String {
    #[derive(serde::Serialize)]
    struct Doc<'a> {
        rows: &'a [ComparisonRow],
    }
    let mut s =
        serde_json::to_string_pretty(&Doc { rows }).expect("row serialization is infallible");
    s.push('\n');
    s
}

/// Write the encoded output to a file, or to stdout when no path is given.
pub fn write_output(payload: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, payload),
        None => io::stdout().write_all(payload.as_bytes()),
    }
}
