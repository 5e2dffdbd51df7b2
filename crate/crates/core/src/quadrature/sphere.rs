use std::f64::consts::PI;

use super::{integrate_1d, InnerStats, QuadResult, QuadSpec};
use crate::error::{Error, Result};
use crate::kernels::Dimension;
use crate::point::Point;

/// Something that can be sampled pointwise on `R^d`.
///
/// `singular_points` lists locations where the function is infinite or
/// sharply peaked; sphere quadratures place breakpoints in their direction.
pub trait Evaluate {
    fn dimension(&self) -> Dimension;
    fn eval(&self, x: &Point) -> f64;
    fn singular_points(&self) -> Vec<Point> {
        Vec::new()
    }
}

/// Adapter turning a closure into an [`Evaluate`].
pub struct FnEval<F> {
    dim: Dimension,
    f: F,
    singular: Vec<Point>,
}

impl<F: Fn(&Point) -> f64> FnEval<F> {
    pub fn new(dim: Dimension, f: F) -> Self {
        FnEval { dim, f, singular: Vec::new() }
    }

    pub fn with_singular_points(mut self, points: Vec<Point>) -> Self {
        self.singular = points;
        self
    }
}

impl<F: Fn(&Point) -> f64> Evaluate for FnEval<F> {
    fn dimension(&self) -> Dimension {
        self.dim
    }
    fn eval(&self, x: &Point) -> f64 {
        (self.f)(x)
    }
    fn singular_points(&self) -> Vec<Point> {
        self.singular.clone()
    }
}

/// Mean of `u` over the sphere `|x| = r`.
pub fn sphere_mean<U: Evaluate + ?Sized>(u: &U, r: f64, spec: &QuadSpec) -> Result<QuadResult> {
    sphere_mean_at(u, &Point::origin(u.dimension().get()), r, spec)
}

/// Mean of `u` over the sphere `|x - center| = r`.
///
/// Circles use the periodic trapezoid rule starting at `spec.circle_nodes`
/// nodes and doubling until two successive sums agree; a node landing on a
/// singularity triggers one half-step rotation of the grid. Integrands that
/// do not settle by 8192 nodes (kinks, near-singular peaks) fall back to
/// adaptive Gauss-Kronrod in the angle with breakpoints at the singular
/// directions. Two-spheres use Gauss-Kronrod in the polar variable, with the
/// pole aligned to the nearest singular point, times a circle mean in the
/// azimuth.
pub fn sphere_mean_at<U: Evaluate + ?Sized>(u: &U, center: &Point, r: f64, spec: &QuadSpec) -> Result<QuadResult> {
    let d = u.dimension();
    d.require_quadrature()?;
    if center.dim() != d.get() {
        return Err(Error::input("sphere centre has the wrong dimension"));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::geometry(format!("sphere radius must be >= 0, got {r}")));
    }
    Ok(mean_unchecked(u, center, r, spec))
}

/// [`sphere_mean_at`] without argument checks; `d` must be 2 or 3.
pub(crate) fn mean_unchecked<U: Evaluate + ?Sized>(u: &U, center: &Point, r: f64, spec: &QuadSpec) -> QuadResult {
    if r == 0.0 {
        let v = u.eval(center);
        return QuadResult { value: v, error: 0.0, evaluations: 1, converged: v.is_finite() };
    }
    let hints = u.singular_points();
    match u.dimension().get() {
        2 => {
            let angles: Vec<f64> = hints
                .iter()
                .filter_map(|p| {
                    let v = p - center;
                    (v.norm() > 0.0).then(|| v[1].atan2(v[0]))
                })
                .collect();
            circle_mean(
                |theta| u.eval(&Point::xy(center[0] + r * theta.cos(), center[1] + r * theta.sin())),
                &angles,
                spec,
            )
        }
        _ => two_sphere_mean(u, center, r, &hints, spec),
    }
}

const MAX_TRAPEZOID_NODES: usize = 8192;

/// Mean of a `2 pi`-periodic function.
pub(crate) fn circle_mean<F: Fn(f64) -> f64>(f: F, hint_angles: &[f64], spec: &QuadSpec) -> QuadResult {
    let n0 = spec.circle_nodes.max(8);
    let trapezoid = |n: usize, offset: f64| -> Option<f64> {
        let h = 2.0 * PI / n as f64;
        let mut sum = 0.0;
        for j in 0..n {
            let v = f(offset + h * j as f64);
            if !v.is_finite() {
                return None;
            }
            sum += v;
        }
        Some(sum / n as f64)
    };

    let mut evaluations = n0;
    let mut offset = 0.0;
    let first = match trapezoid(n0, offset) {
        Some(v) => Some(v),
        None => {
            offset = PI / n0 as f64;
            evaluations += n0;
            trapezoid(n0, offset)
        }
    };

    if let Some(mut coarse) = first {
        let mut n = n0;
        let mut last_diff = f64::INFINITY;
        while n < MAX_TRAPEZOID_NODES {
            // midpoints of the current grid complete the 2n-point rule
            let Some(mid) = trapezoid(n, offset + PI / n as f64) else {
                break;
            };
            evaluations += n;
            let fine = 0.5 * (coarse + mid);
            let diff = (fine - coarse).abs();
            n *= 2;
            if diff <= spec.target(fine) {
                return QuadResult { value: fine, error: diff, evaluations, converged: true };
            }
            // spectral convergence shrinks the change much faster than this;
            // slower means a kink or a near singularity
            if diff > 0.125 * last_diff {
                break;
            }
            last_diff = diff;
            coarse = fine;
        }
    }

    let r = adaptive_angle_mean(&f, hint_angles, spec);
    QuadResult { evaluations: r.evaluations + evaluations, ..r }
}

fn adaptive_angle_mean<F: Fn(f64) -> f64>(f: &F, hint_angles: &[f64], spec: &QuadSpec) -> QuadResult {
    let start = hint_angles.first().copied().unwrap_or(0.0);
    let cuts: Vec<f64> = hint_angles.iter().map(|a| start + (a - start).rem_euclid(2.0 * PI)).collect();
    let local = spec.with_singular_points(cuts);
    integrate_1d(f, start, start + 2.0 * PI, &local).scale(1.0 / (2.0 * PI))
}

fn two_sphere_mean<U: Evaluate + ?Sized>(
    u: &U,
    center: &Point,
    r: f64,
    hints: &[Point],
    spec: &QuadSpec,
) -> QuadResult {
    // pole along the hint closest to the sphere
    let dirs: Vec<(f64, Point)> = hints
        .iter()
        .filter_map(|p| {
            let v = p - center;
            let n = v.norm();
            (n > 0.0).then(|| ((n - r).abs(), v.scaled(1.0 / n)))
        })
        .collect();
    let pole = dirs
        .iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, v)| v.clone())
        .unwrap_or_else(|| Point::xyz(0.0, 0.0, 1.0));
    let (e1, e2) = orthonormal_complement(&pole);

    let polar_cuts: Vec<f64> = dirs.iter().map(|(_, v)| v.dot(&pole)).collect();
    let azimuths: Vec<Vec<f64>> = dirs
        .iter()
        .map(|(_, v)| {
            let (a, b) = (v.dot(&e1), v.dot(&e2));
            if a * a + b * b > 1e-24 {
                vec![b.atan2(a)]
            } else {
                Vec::new()
            }
        })
        .collect();
    let azimuth_hints: Vec<f64> = azimuths.into_iter().flatten().collect();

    let mut inner_spec = spec.clone();
    inner_spec.circle_nodes = 64;
    let stats = InnerStats::default();
    let ring = |z: f64| -> f64 {
        let rho = r * (1.0 - z * z).max(0.0).sqrt();
        let r_mean = circle_mean(
            |phi| {
                let (s, c) = phi.sin_cos();
                let x = Point::xyz(
                    center[0] + rho * (c * e1[0] + s * e2[0]) + r * z * pole[0],
                    center[1] + rho * (c * e1[1] + s * e2[1]) + r * z * pole[1],
                    center[2] + rho * (c * e1[2] + s * e2[2]) + r * z * pole[2],
                );
                u.eval(&x)
            },
            &azimuth_hints,
            &inner_spec,
        );
        stats.record(&r_mean);
        r_mean.value
    };
    let outer_spec = spec.with_singular_points(polar_cuts);
    let outer = integrate_1d(ring, -1.0, 1.0, &outer_spec).scale(0.5);
    stats.finish(outer, 1.0)
}

fn orthonormal_complement(n: &Point) -> (Point, Point) {
    let helper = if n[0].abs() < 0.9 { Point::xyz(1.0, 0.0, 0.0) } else { Point::xyz(0.0, 1.0, 0.0) };
    let proj = n.dot(&helper);
    let e1 = &helper - &n.scaled(proj);
    let e1 = e1.scaled(1.0 / e1.norm());
    let e2 = Point::xyz(n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]);
    (e1, e2)
}
