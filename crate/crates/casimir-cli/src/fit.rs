//! Least-squares extraction of the first-order correction coefficient.
//!
//! The small-separation expansions carried by this workspace have the shape
//! `value(ε) = leading(ε) · (1 + c·ε + O(ε²))`. Given sampled rows
//! `(ε_i, value_i, leading_i)`, form `y_i = value_i / leading_i − 1` and fit
//! the through-origin line `y = c·ε` by least squares:
//!
//! ```text
//! c = Σ ε_i y_i / Σ ε_i²
//! ```
//!
//! The returned standard error is the usual through-origin regression
//! estimate `sqrt( Σ (y_i − c ε_i)² / ((n − 1) Σ ε_i²) )`. It quantifies the
//! scatter of the residuals, which for exact-method inputs is dominated by
//! the neglected O(ε²) curvature, so it is a trust radius rather than a
//! statistical error bar.

use casimir_core::{Error, Result};

/// Fit `value/leading − 1 = c·ε` over the given `(eps, value, leading)`
/// rows; returns `(c, std_err)`.
///
/// Requires at least three rows with distinct, positive, finite `eps`,
/// finite `value`, and nonzero finite `leading`; anything else is a
/// [`Error::DegenerateFit`].
pub fn fit_correction(rows: &[(f64, f64, f64)]) -> Result<(f64, f64)> {
    if rows.len() < 3 {
        return Err(Error::DegenerateFit(
            "need at least three sample points to fit a slope",
        ));
    }
    for &(eps, value, leading) in rows {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::DegenerateFit(
                "sample abscissae must be positive and finite",
            ));
        }
        if !value.is_finite() || !leading.is_finite() || leading == 0.0 {
            return Err(Error::DegenerateFit(
                "sample values and leading terms must be finite and nonzero",
            ));
        }
    }
    let first = rows[0].0;
    if rows.iter().all(|&(eps, _, _)| eps == first) {
        return Err(Error::DegenerateFit(
            "sample abscissae are all equal; the slope is unidentifiable",
        ));
    }
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for &(eps, value, leading) in rows {
        let y = value / leading - 1.0;
        sxy += eps * y;
        sxx += eps * eps;
    }
    let c = sxy / sxx;
    let mut ss_res = 0.0;
    for &(eps, value, leading) in rows {
        let y = value / leading - 1.0;
        let resid = y - c * eps;
        ss_res += resid * resid;
    }
    let n = rows.len() as f64;
    let std_err = (ss_res / ((n - 1.0) * sxx)).sqrt();
    Ok((c, std_err))
}
