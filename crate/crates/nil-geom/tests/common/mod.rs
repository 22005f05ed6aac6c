//! Shared numeric helpers for the integration suites.
#![allow(dead_code)]

use nil_geom::CurveParams;

/// Adaptive Simpson quadrature with Richardson extrapolation.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn split<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, 0.5 * (a + m), m);
        let right = simpson(f, m, 0.5 * (m + b), b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            split(f, a, m, left, 0.5 * tol, depth - 1) + split(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let whole = simpson(f, a, 0.5 * (a + b), b);
    split(f, a, b, whole, tol, 48)
}

/// Arc length over [0, t_end] of the translation curve with the given
/// initial data, by quadrature of the invariant length element
/// dx² + (1 + x²) dy² − 2 x dy dz + dz² written in coordinates.
pub fn curve_arc_length(params: CurveParams, t_end: f64) -> f64 {
    let tangent = params.unit_tangent();
    let (u, v, w) = (tangent.u, tangent.v, tangent.w);
    let speed = move |t: f64| {
        let x = u * t;
        let dz = u * v * t + w;
        (u * u + (1.0 + x * x) * v * v - 2.0 * x * v * dz + dz * dz).sqrt()
    };
    adaptive_simpson(&speed, 0.0, t_end, 1e-12)
}
