//! First-eigenvalue analysis along the constant-volume family of invariant
//! Kähler metrics on `SU(3)/T²`.
//!
//! In the metric coordinates `s = a − b`, `t = a + 2b` the torus-restricted
//! Casimir has eigenvalues
//!
//! ```text
//!     (t² + s² + 3st ± √(t⁴ + s⁴ − s²t²)) / (3st(s+t)) ,
//! ```
//!
//! and the volume-normalized locus is the curve `st(s+t) = 2/27`, where the
//! prefactor becomes `9/2`. The lower branch, restricted to the curve, is
//! the λ₁ function `f`; it attains its maximum value 2 exactly at
//! `s = t = 1/3`, the Kähler–Einstein point.

use crate::error::{Error, Result};

/// Curve constant: `st(s+t)` at the Kähler–Einstein point `s = t = 1/3`.
pub const CURVE_LEVEL: f64 = 2.0 / 27.0;

/// `(s, t) = (a − b, a + 2b)` from chamber coordinates.
pub fn ab_to_st(a: f64, b: f64) -> (f64, f64) {
    (a - b, a + 2.0 * b)
}

/// Inverse coordinate change: `a = (2s + t)/3`, `b = (t − s)/3`.
pub fn st_to_ab(s: f64, t: f64) -> (f64, f64) {
    ((2.0 * s + t) / 3.0, (t - s) / 3.0)
}

/// The unique `t > 0` with `st(s + t) = 2/27`, i.e. the positive root of
/// `s t² + s² t − 2/27 = 0`.
pub fn curve_t(s: f64) -> Result<f64> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::NonPositiveCurveParameter);
    }
    let disc = s.powi(4) + 8.0 * s / 27.0;
    Ok((-s * s + disc.sqrt()) / (2.0 * s))
}

/// Both eigenvalues of the torus-restricted Casimir at arbitrary chamber
/// coordinates `(s, t)`, smaller first.
pub fn d_eigenvalues(s: f64, t: f64) -> (f64, f64) {
    let scale = 1.0 / (3.0 * s * t * (s + t));
    let mean = t * t + s * s + 3.0 * s * t;
    let root = (t.powi(4) + s.powi(4) - s * s * t * t).sqrt();
    (scale * (mean - root), scale * (mean + root))
}

/// λ₁ branch on the constant-volume curve:
/// `f(s,t) = 9/2 · (t² + s² + 3st − √(t⁴ + s⁴ − s²t²))` with `t = t(s)`.
pub fn lambda1_on_curve(s: f64) -> Result<f64> {
    let t = curve_t(s)?;
    Ok(lambda1_formula(s, t))
}

/// The curve-normalized closed form; only meaningful when `st(s+t) = 2/27`.
pub fn lambda1_formula(s: f64, t: f64) -> f64 {
    4.5 * (t * t + s * s + 3.0 * s * t - (t.powi(4) + s.powi(4) - s * s * t * t).sqrt())
}

/// Dense evaluation of `f` along the curve.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub samples: Vec<(f64, f64)>,
    pub max_value: f64,
    pub argmax_s: f64,
}

pub fn lambda1_scan(n_samples: usize, s_min: f64, s_max: f64) -> Result<ScanResult> {
    if n_samples < 2 || !(s_min.is_finite() && s_max.is_finite()) || s_min <= 0.0 || s_min >= s_max
    {
        return Err(Error::InvalidScanRange);
    }
    let step = (s_max - s_min) / (n_samples - 1) as f64;
    let mut samples = Vec::with_capacity(n_samples);
    let mut max_value = f64::NEG_INFINITY;
    let mut argmax_s = s_min;
    for i in 0..n_samples {
        let s = s_min + step * i as f64;
        let f = lambda1_on_curve(s)?;
        if f > max_value {
            max_value = f;
            argmax_s = s;
        }
        samples.push((s, f));
    }
    Ok(ScanResult {
        samples,
        max_value,
        argmax_s,
    })
}

/// Maximizes `f` along the curve with the default bracket `[0.05, 2]`.
pub fn maximize_lambda1(tol: f64) -> Result<(f64, f64)> {
    maximize_lambda1_on(0.05, 2.0, tol)
}

/// Golden-section maximization of `f` on `[s_lo, s_hi]`; `f` is smooth and
/// unimodal there (checked empirically by the dense scan), so the bracket
/// shrinks unconditionally. An optimum pinned to an endpoint signals a bad
/// bracket and is reported as an error.
pub fn maximize_lambda1_on(s_lo: f64, s_hi: f64, tol: f64) -> Result<(f64, f64)> {
    let positive = |x: f64| x.is_finite() && x > 0.0;
    if !positive(tol) || !positive(s_lo) || s_lo >= s_hi {
        return Err(Error::InvalidScanRange);
    }
    let xtol = tol.clamp(1e-12, 1e-8);
    let (s_star, f_star) = golden_section_max(|s| lambda1_on_curve(s).unwrap(), s_lo, s_hi, xtol);
    if s_star - s_lo < 10.0 * xtol || s_hi - s_star < 10.0 * xtol {
        return Err(Error::BracketFailure(s_lo, s_hi));
    }
    Ok((s_star, f_star))
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iters = 0;
    while b - a > xtol && iters < 300 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        iters += 1;
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
