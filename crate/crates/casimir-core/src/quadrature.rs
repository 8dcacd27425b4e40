//! One-dimensional quadrature: a 15-point Gauss–Kronrod rule with embedded
//! 7-point Gauss error estimate, an adaptive bisection integrator built on
//! it, and a semi-infinite panel integrator for exponentially decaying
//! integrands (the workhorse of the determinant engine's frequency
//! integrals).
//!
//! Everything is deterministic: panels are accumulated in a fixed order and
//! the adaptive integrator sums its final segment list sorted by position.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::abs;

/// Kronrod abscissae for the interval `[-1, 1]` (non-negative half; the rule
/// is symmetric). Entries at even indices extend the embedded Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Weights of the embedded 7-point Gauss rule (odd-index abscissae of `XGK`).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// 15-point Gauss–Kronrod evaluation of `∫_a^b f` returning the Kronrod
/// value and `|K15 - G7|` as the error estimate. The integrand may fail
/// (e.g. a determinant error at one frequency); failures propagate.
pub fn gauss_kronrod_15<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let flo = f(c - dx)?;
        let fhi = f(c + dx)?;
        let pair = flo + fhi;
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok((kronrod * h, abs(kronrod - gauss) * abs(h)))
}

/// Adaptive bisection on `[a, b]`: repeatedly split the segment with the
/// largest error estimate until the total estimated error drops below
/// `tol * max(|value|, floor)` or `max_segments` is reached. The absolute
/// floor guards integrals whose true value is near zero.
pub fn adaptive<F>(f: &mut F, a: f64, b: f64, tol: f64, abs_floor: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const MAX_SEGMENTS: usize = 2_000;
    struct Seg {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }
    let (value, err) = gauss_kronrod_15(f, a, b)?;
    let mut segs = Vec::with_capacity(64);
    segs.push(Seg { a, b, value, err });
    loop {
        let mut total = 0.0;
        let mut total_err = 0.0;
        for s in segs.iter() {
            total += s.value;
            total_err += s.err;
        }
        let target = tol * abs(total).max(abs_floor);
        if total_err <= target || segs.len() >= MAX_SEGMENTS {
            if total_err > target {
                return Err(Error::NonConvergence {
                    what: "adaptive quadrature",
                    achieved: total_err,
                    requested: target,
                });
            }
            // Deterministic final summation in position order.
            segs.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap());
            let mut v = 0.0;
            let mut e = 0.0;
            for s in segs.iter() {
                v += s.value;
                e += s.err;
            }
            return Ok((v, e));
        }
        // Split the worst segment.
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Seg { a: sa, b: sb, .. } = segs.swap_remove(worst);
        let mid = 0.5 * (sa + sb);
        let (v1, e1) = gauss_kronrod_15(f, sa, mid)?;
        let (v2, e2) = gauss_kronrod_15(f, mid, sb)?;
        segs.push(Seg {
            a: sa,
            b: mid,
            value: v1,
            err: e1,
        });
        segs.push(Seg {
            a: mid,
            b: sb,
            value: v2,
            err: e2,
        });
    }
}

/// Integrate `f` over `[0, ∞)` for an integrand that eventually decays
/// exponentially: fixed-width Gauss–Kronrod panels `[k·w, (k+1)·w]` are
/// accumulated until two consecutive panels each contribute less than
/// `tol * |accumulated|` (and at least `min_panels` have been taken).
/// Returns `(value, estimated_error)` where the estimate combines the
/// Kronrod defects with the magnitude of the last panel (a proxy for the
/// truncated tail).
pub fn integrate_decaying<F>(
    f: &mut F,
    panel_width: f64,
    tol: f64,
    min_panels: usize,
    max_panels: usize,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut acc = 0.0;
    let mut err = 0.0;
    let mut small_streak = 0;
    let mut last_panel = 0.0;
    for k in 0..max_panels {
        let a = k as f64 * panel_width;
        let b = a + panel_width;
        let (v, e) = gauss_kronrod_15(f, a, b)?;
        acc += v;
        err += e;
        last_panel = abs(v);
        if k + 1 >= min_panels {
            if last_panel <= tol * abs(acc) {
                small_streak += 1;
                if small_streak >= 2 {
                    return Ok((acc, err + last_panel));
                }
            } else {
                small_streak = 0;
            }
        }
    }
    Err(Error::NonConvergence {
        what: "semi-infinite panel quadrature",
        achieved: last_panel / abs(acc).max(f64::MIN_POSITIVE),
        requested: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::{cos, exp, ln, sqrt};

    #[test]
    fn gk15_is_exact_for_low_degree_polynomials() {
        // Degree ≤ 13 integrated exactly by the embedded Gauss rule alone;
        // the Kronrod extension is exact well beyond that.
        let mut f = |x: f64| Ok(x * x * x * x * x - 2.0 * x * x + 3.0);
        let (v, e) = gauss_kronrod_15(&mut f, -1.0, 2.0).unwrap();
        // ∫ x^5 - 2x^2 + 3 dx over [-1, 2] = 63/6 - 6 + 9 = 13.5
        assert!((v - 13.5).abs() < 1e-13, "value {v}");
        assert!(e < 1e-12);
    }

    #[test]
    fn adaptive_handles_peaked_integrands() {
        // ∫_0^1 1/sqrt(x) dx = 2, integrable endpoint singularity.
        let mut f = |x: f64| Ok(1.0 / sqrt(x.max(1e-300)));
        let (v, _) = adaptive(&mut f, 0.0, 1.0, 1e-9, 1e-300).unwrap();
        assert!((v - 2.0).abs() < 1e-6, "value {v}");

        // A sharp but smooth peak.
        let mut g = |x: f64| Ok(1.0 / ((x - 0.3) * (x - 0.3) + 1e-4));
        let (v, _) = adaptive(&mut g, 0.0, 1.0, 1e-10, 1e-300).unwrap();
        // ∫ dx/((x-c)^2 + s^2) = [atan((x-c)/s)]/s
        let s = 1e-2;
        let exact = (libm::atan(0.7 / s) - libm::atan(-0.3 / s)) / s;
        assert!((v - exact).abs() < 1e-7 * exact, "value {v} vs {exact}");
    }

    #[test]
    fn adaptive_propagates_integrand_errors() {
        let mut f = |x: f64| {
            if x > 0.5 {
                Err(Error::Domain("test failure"))
            } else {
                Ok(x)
            }
        };
        assert!(adaptive(&mut f, 0.0, 1.0, 1e-9, 1e-300).is_err());
    }

    #[test]
    fn decaying_integrator_reaches_the_tail() {
        // ∫_0^∞ e^{-x} cos x dx = 1/2.
        let mut f = |x: f64| Ok(exp(-x) * cos(x));
        let (v, _) = integrate_decaying(&mut f, 1.0, 1e-12, 4, 200).unwrap();
        assert!((v - 0.5).abs() < 1e-12, "value {v}");

        // ∫_0^∞ x e^{-x} dx = 1 with a slower start.
        let mut g = |x: f64| Ok(x * exp(-x));
        let (v, _) = integrate_decaying(&mut g, 0.5, 1e-12, 4, 400).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "value {v}");
    }

    #[test]
    fn decaying_integrator_reports_non_convergence() {
        // 1/(1+x) decays too slowly for any finite panel budget at 1e-12.
        let mut f = |x: f64| Ok(1.0 / (1.0 + x));
        let r = integrate_decaying(&mut f, 1.0, 1e-12, 4, 50);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
        let _ = ln(1.0); // keep fmath used in this cfg
    }
}
