//! Error type shared by all numeric routines.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numeric routines.
///
/// All variants carry enough context to report a useful message without
/// allocation; formatting is available through [`core::fmt::Display`].
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    Domain(&'static str),
    /// Evaluation at a pole of the function (e.g. the zeta function at 1,
    /// the Gamma function at non-positive integers).
    Pole(&'static str),
    /// The result (or an essential intermediate) exceeds the `f64` range.
    Overflow(&'static str),
    /// An iterative scheme failed to reach the requested tolerance.
    NonConvergence {
        what: &'static str,
        achieved: f64,
        requested: f64,
    },
    /// `det(1 - M)` left the interval `(0, 1]`, which signals a truncation
    /// or conditioning problem in the determinant engine: the matrix `M`
    /// has spectral radius below one for every valid geometry, so a
    /// non-positive determinant can only arise numerically.
    DeterminantOutOfRange { log_det: f64, xi: f64 },
    /// A least-squares fit was requested on degenerate data (fewer than
    /// three rows, or all abscissae equal).
    DegenerateFit(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Pole(msg) => write!(f, "pole: {msg}"),
            Error::Overflow(msg) => write!(f, "overflow: {msg}"),
            Error::NonConvergence {
                what,
                achieved,
                requested,
            } => write!(
                f,
                "{what} did not converge: achieved {achieved:e}, requested {requested:e}"
            ),
            Error::DeterminantOutOfRange { log_det, xi } => write!(
                f,
                "det(1 - M) out of (0, 1] at xi = {xi:e} (log det = {log_det:e}); \
                 increase the truncation order or check the geometry"
            ),
            Error::DegenerateFit(msg) => write!(f, "degenerate fit: {msg}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_formats_are_informative() {
        let e = Error::NonConvergence {
            what: "mode sum",
            achieved: 1e-3,
            requested: 1e-6,
        };
        let s = alloc::format!("{e}");
        assert!(s.contains("mode sum"));
        assert!(s.contains("1e-3"));

        let d = Error::DeterminantOutOfRange {
            log_det: 0.25,
            xi: 1.5,
        };
        let s = alloc::format!("{d}");
        assert!(s.contains("det(1 - M)"));
    }
}
