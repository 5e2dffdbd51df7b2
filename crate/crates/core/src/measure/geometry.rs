//! Closed-form and one-dimensional pieces for uniform spheres.

use std::f64::consts::PI;

use crate::kernels::Dimension;
use crate::quadrature::{integrate_1d, QuadResult, QuadSpec};

/// Fraction of the uniform measure on a sphere of radius `s` lying in a
/// closed ball of radius `t` whose centre is at distance `dist` from the
/// sphere's centre. Only `d = 2, 3`.
pub(crate) fn sphere_fraction(d: Dimension, s: f64, dist: f64, t: f64) -> f64 {
    if s == 0.0 {
        return if dist <= t { 1.0 } else { 0.0 };
    }
    if dist == 0.0 {
        return if s <= t { 1.0 } else { 0.0 };
    }
    if t >= s + dist {
        return 1.0;
    }
    if t < (s - dist).abs() {
        return 0.0;
    }
    // the cap is cos(angle) >= u, angle measured from the direction of the ball centre
    let u = ((s * s + dist * dist - t * t) / (2.0 * s * dist)).clamp(-1.0, 1.0);
    match d.get() {
        2 => u.acos() / PI,
        _ => 0.5 * (1.0 - u),
    }
}

/// `N_y(r)` of the unit uniform measure on a sphere of radius `s`, with `y`
/// at distance `dist` from its centre.
///
/// Whole sphere inside the ball: `k(r) - k(max(s, dist))` by the mean value
/// property. Partial overlap: `int_{|s-dist|}^r frac(t) t^(1-d) dt`, closed
/// form in space and Gauss-Kronrod in the plane.
pub(crate) fn sphere_integrated_counting(d: Dimension, s: f64, dist: f64, r: f64, spec: &QuadSpec) -> QuadResult {
    if s == 0.0 || dist == 0.0 {
        let m = s.max(dist);
        if m == 0.0 {
            return QuadResult::exact(f64::INFINITY);
        }
        return QuadResult::exact((d.kernel(r) - d.kernel(m)).max(0.0));
    }
    let lo = (s - dist).abs();
    let hi = s + dist;
    if r <= lo {
        return QuadResult::exact(0.0);
    }
    if r >= hi {
        return QuadResult::exact(d.kernel(r) - d.kernel(s.max(dist)));
    }
    match d.get() {
        // t = lo + v^2 absorbs the square-root onset of the arc at t = lo
        2 => integrate_1d(
            |v| {
                let t = lo + v * v;
                2.0 * v * sphere_fraction(d, s, dist, t) / t
            },
            0.0,
            (r - lo).sqrt(),
            spec,
        ),
        _ => {
            // frac(t) = (t^2 - (s - dist)^2) / (4 s dist)
            let c = (s - dist) * (s - dist);
            let prim = |t: f64| if t == 0.0 { 0.0 } else { t + c / t };
            QuadResult::exact((prim(r) - prim(lo)) / (4.0 * s * dist))
        }
    }
}
