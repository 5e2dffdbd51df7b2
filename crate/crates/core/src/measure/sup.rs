//! Grid approximations of suprema and infima over balls and supports.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::point::Point;
use crate::quadrature::{Estimate, QuadSpec};

use super::functionals::{integrated_counting, potential_unchecked};
use super::Measure;

/// Lattice resolution and number of local refinement levels.
///
/// `resolution` is the number of intervals per axis of the bounding cube, so
/// resolutions related by powers of two give nested lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub resolution: usize,
    pub refinement_levels: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { resolution: 32, refinement_levels: 3 }
    }
}

impl Grid {
    pub fn new(resolution: usize) -> Self {
        Grid { resolution, ..Grid::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution == 0 {
            return Err(Error::parse("grid.resolution", "must be positive"));
        }
        Ok(())
    }
}

/// Where a supremum or infimum is taken.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    /// Closed ball.
    Ball { center: Point, radius: f64 },
    /// Closed support of the measure.
    Support,
}

impl Region {
    pub fn ball(center: Point, radius: f64) -> Self {
        Region::Ball { center, radius }
    }
}

/// Result of a grid search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupReport {
    /// Best value after local refinement.
    pub value: ExtReal,
    /// Best value over the lattice, atoms and support samples only; monotone
    /// along nested lattices.
    pub grid_value: ExtReal,
    pub argmax: Point,
    /// Largest quadrature error among the evaluations that set the optimum.
    pub error: f64,
    pub converged: bool,
    pub resolution: usize,
    pub evaluations: usize,
}

/// `sup_y N_y(r)` over `region`, taken over atoms, component centres, a
/// lattice and support samples, then refined three times by a factor 4
/// around the best point. Stops at the first `+inf`.
pub fn sup_integrated_counting(
    mu: &Measure,
    region: &Region,
    r: f64,
    grid: &Grid,
    spec: &QuadSpec,
) -> Result<SupReport> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::input(format!("radius must be positive, got {r}")));
    }
    grid.validate()?;
    check_region(mu, region)?;
    let eval = |y: &Point| integrated_counting(mu, y, r, spec).expect("dimensions checked");
    optimise(mu, region, grid, &eval, Goal::Max)
}

/// `inf pt_mu` over the support of `mu`, with the same search as
/// [`sup_integrated_counting`]. Stops at the first `-inf`.
pub fn inf_potential_on_support(mu: &Measure, grid: &Grid) -> Result<SupReport> {
    grid.validate()?;
    let eval = |x: &Point| Estimate::exact(potential_unchecked(mu, x));
    optimise(mu, &Region::Support, grid, &eval, Goal::Min)
}

fn check_region(mu: &Measure, region: &Region) -> Result<()> {
    if let Region::Ball { center, radius } = region {
        mu.check_point(center)?;
        if !(*radius >= 0.0 && radius.is_finite()) {
            return Err(Error::geometry(format!("region radius must be >= 0, got {radius}")));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    Max,
    Min,
}

impl Goal {
    fn better(self, a: ExtReal, b: ExtReal) -> bool {
        match self {
            Goal::Max => a > b,
            Goal::Min => a < b,
        }
    }

    fn is_extreme(self, v: ExtReal) -> bool {
        match self {
            Goal::Max => v.is_pos_inf(),
            Goal::Min => v.is_neg_inf(),
        }
    }
}

#[derive(Clone)]
struct Best {
    value: ExtReal,
    point: Point,
    error: f64,
    converged: bool,
}

/// Evaluate in parallel, reduce in candidate order so ties resolve the same
/// way on every run.
fn best_of<E>(points: &[Point], eval: &E, goal: Goal, current: Option<Best>) -> Option<Best>
where
    E: Fn(&Point) -> Estimate + Sync,
{
    let values: Vec<Estimate> = points.par_iter().map(eval).collect();
    let mut best = current;
    for (p, e) in points.iter().zip(values) {
        let replace = match &best {
            None => true,
            Some(b) => goal.better(e.value, b.value),
        };
        if replace {
            best = Some(Best { value: e.value, point: p.clone(), error: e.error, converged: e.converged });
            if goal.is_extreme(e.value) {
                break;
            }
        }
    }
    best
}

fn optimise<E>(mu: &Measure, region: &Region, grid: &Grid, eval: &E, goal: Goal) -> Result<SupReport>
where
    E: Fn(&Point) -> Estimate + Sync,
{
    let d = mu.dimension().get();
    let n = grid.resolution;
    let (candidates, step) = match region {
        Region::Ball { center, radius } => (ball_candidates(mu, center, *radius, n), 2.0 * radius / n as f64),
        Region::Support => {
            if mu.is_zero() {
                // empty support: sup of nothing is -inf, inf is +inf
                let value = match goal {
                    Goal::Max => ExtReal::NEG_INFINITY,
                    Goal::Min => ExtReal::INFINITY,
                };
                return Ok(SupReport {
                    value,
                    grid_value: value,
                    argmax: Point::origin(d),
                    error: 0.0,
                    converged: true,
                    resolution: n,
                    evaluations: 0,
                });
            }
            (support_candidates(mu, n), support_step(mu, n))
        }
    };
    let mut evaluations = candidates.len();
    let mut best = best_of(&candidates, eval, goal, None).expect("candidate list is never empty");
    let grid_value = best.value;
    if !goal.is_extreme(best.value) && step > 0.0 {
        let mut h = step;
        for _ in 0..grid.refinement_levels {
            h /= 4.0;
            let local: Vec<Point> =
                local_lattice(&best.point, h, 2).into_iter().filter_map(|p| clip(mu, region, p)).collect();
            evaluations += local.len();
            best = best_of(&local, eval, goal, Some(best)).expect("seeded with a value");
            if goal.is_extreme(best.value) {
                break;
            }
        }
    }
    Ok(SupReport {
        value: best.value,
        grid_value,
        argmax: best.point,
        error: best.error,
        converged: best.converged,
        resolution: n,
        evaluations,
    })
}

/// All points `center + h * k` with integer `|k_i| <= m`, in lexicographic order.
fn local_lattice(center: &Point, h: f64, m: i64) -> Vec<Point> {
    let d = center.dim();
    let side = (2 * m + 1) as usize;
    let total = side.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = center.coords().to_vec();
            for ci in c.iter_mut() {
                let k = (idx % side) as i64 - m;
                idx /= side;
                *ci += h * k as f64;
            }
            Point::from(c)
        })
        .collect()
}

/// Lattice of the cube around a ball, restricted to the ball.
fn cube_lattice(center: &Point, radius: f64, n: usize) -> Vec<Point> {
    let half = n as i64 / 2;
    let h = 2.0 * radius / n as f64;
    let d = center.dim();
    let side = n + 1;
    let mut out = Vec::new();
    for mut idx in 0..side.pow(d as u32) {
        let mut c = center.coords().to_vec();
        for ci in c.iter_mut() {
            let k = (idx % side) as i64;
            idx /= side;
            // index n/2 is the centre for even n
            *ci += if n.is_multiple_of(2) { (k - half) as f64 * h } else { -radius + k as f64 * h };
        }
        let p = Point::from(c);
        if p.dist(center) <= radius * (1.0 + 1e-12) {
            out.push(p);
        }
    }
    out
}

/// `m` points on the sphere of radius `s` about `c`.
fn sphere_samples(c: &Point, s: f64, n: usize) -> Vec<Point> {
    match c.dim() {
        2 => {
            let m = 4 * n;
            (0..m)
                .map(|j| {
                    let a = 2.0 * PI * j as f64 / m as f64;
                    c + &Point::xy(s * a.cos(), s * a.sin())
                })
                .collect()
        }
        3 => {
            // Fibonacci lattice
            let m = 2 * n * n;
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..m)
                .map(|j| {
                    let z = 1.0 - (2.0 * j as f64 + 1.0) / m as f64;
                    let rho = (1.0 - z * z).sqrt();
                    let a = golden * j as f64;
                    c + &Point::xyz(s * rho * a.cos(), s * rho * a.sin(), s * z)
                })
                .collect()
        }
        _ => Vec::new(),
    }
}

fn ball_candidates(mu: &Measure, center: &Point, radius: f64, n: usize) -> Vec<Point> {
    let inside = |p: &Point| p.dist(center) <= radius * (1.0 + 1e-12);
    let mut out: Vec<Point> = mu.atoms().iter().map(|a| a.point.clone()).filter(inside).collect();
    out.extend(mu.component_centers().into_iter().filter(inside));
    out.push(center.clone());
    out.extend(cube_lattice(center, radius, n));
    out.extend(support_samples(mu, n).into_iter().filter(inside));
    out
}

fn support_samples(mu: &Measure, n: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for s in mu.spheres() {
        out.extend(sphere_samples(&s.center, s.radius, n));
    }
    for b in mu.balls() {
        for (lo, hi) in b.radial.support() {
            out.extend(sphere_samples(&b.center, hi, n));
            if lo > 0.0 {
                out.extend(sphere_samples(&b.center, lo, n));
            }
        }
    }
    out
}

fn support_candidates(mu: &Measure, n: usize) -> Vec<Point> {
    let mut out: Vec<Point> = mu.atoms().iter().map(|a| a.point.clone()).collect();
    out.extend(support_samples(mu, n));
    for b in mu.balls() {
        let support = b.radial.support();
        if support.first().is_some_and(|s| s.0 == 0.0) {
            out.push(b.center.clone());
        }
        out.extend(cube_lattice(&b.center, b.radial.radius, n).into_iter().filter(|p| {
            let t = p.dist(&b.center);
            support.iter().any(|(lo, hi)| t >= *lo && t <= *hi)
        }));
    }
    out
}

fn support_step(mu: &Measure, n: usize) -> f64 {
    let spheres = mu.spheres().iter().map(|s| 2.0 * PI * s.radius / (4 * n) as f64);
    let balls = mu.balls().iter().map(|b| 2.0 * b.radial.radius / n as f64);
    spheres.chain(balls).fold(0.0, f64::max)
}

/// Keep `p` if it is in the region, or move it to the nearest support point.
fn clip(mu: &Measure, region: &Region, p: Point) -> Option<Point> {
    match region {
        Region::Ball { center, radius } => (p.dist(center) <= *radius * (1.0 + 1e-12)).then_some(p),
        Region::Support => {
            let mut best: Option<(f64, Point)> = None;
            let mut consider = |q: Point| {
                let dist = q.dist(&p);
                if best.as_ref().is_none_or(|b| dist < b.0) {
                    best = Some((dist, q));
                }
            };
            for s in mu.spheres() {
                consider(radial_projection(&s.center, &p, s.radius, s.radius));
            }
            for b in mu.balls() {
                for (lo, hi) in b.radial.support() {
                    consider(radial_projection(&b.center, &p, lo, hi));
                }
            }
            best.map(|b| b.1)
        }
    }
}

/// Nearest point to `p` in the annulus `lo <= |x - c| <= hi`.
fn radial_projection(c: &Point, p: &Point, lo: f64, hi: f64) -> Point {
    let v = p - c;
    let t = v.norm();
    let target = t.clamp(lo, hi);
    if t == target {
        return p.clone();
    }
    if t == 0.0 {
        return c + &Point::on_axis(c.dim(), 0, target);
    }
    c + &v.scaled(target / t)
}
