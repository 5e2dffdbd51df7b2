//! Counting functions, potentials and integrals against a measure.

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::kernels::Dimension;
use crate::point::Point;
use crate::quadrature::{integrate_1d, mean_unchecked, Estimate, Evaluate, InnerStats, QuadResult, QuadSpec};

use super::geometry::{sphere_fraction, sphere_integrated_counting};
use super::profile::Radial;
use super::Measure;

/// `int g(s) f(s) ds` over the support of `radial` clipped to `[lo, hi]`,
/// split at the profile breaks and at `extra`.
fn integrate_density<F: Fn(f64) -> f64>(
    radial: &Radial,
    lo: f64,
    hi: f64,
    extra: &[f64],
    spec: &QuadSpec,
    f: F,
) -> QuadResult {
    let mut total = QuadResult::exact(0.0);
    for (a, b) in radial.support() {
        let a = a.max(lo);
        let b = b.min(hi);
        if b <= a {
            continue;
        }
        let cuts = radial.breaks().into_iter().chain(extra.iter().copied());
        let local = spec.with_singular_points(cuts);
        total = total.plus(integrate_1d(|s| radial.density(s) * f(s), a, b, &local));
    }
    total
}

/// `0 * k(0)` is taken as 0.
fn mass_times_kernel(d: Dimension, mass: f64, t: f64) -> f64 {
    if mass == 0.0 {
        0.0
    } else {
        mass * d.kernel(t)
    }
}

/// `mu(closed ball of radius t about y)`.
pub fn radial_counting(mu: &Measure, y: &Point, t: f64, spec: &QuadSpec) -> Result<Estimate> {
    mu.check_point(y)?;
    if !(t >= 0.0) {
        return Err(Error::input(format!("radius must be >= 0, got {t}")));
    }
    let d = mu.dimension();
    let atoms: f64 = mu.atoms().iter().filter(|a| a.point.dist(y) <= t).map(|a| a.mass).sum();
    let spheres: f64 = mu.spheres().iter().map(|s| s.mass * sphere_fraction(d, s.radius, s.center.dist(y), t)).sum();
    let mut total = QuadResult::exact(atoms + spheres);
    for b in mu.balls() {
        let dist = b.center.dist(y);
        let inside = if t >= dist { b.radial.cdf(t - dist) } else { 0.0 };
        let partial = if dist == 0.0 {
            QuadResult::exact(0.0)
        } else {
            integrate_density(&b.radial, (t - dist).abs(), t + dist, &[dist], spec, |s| sphere_fraction(d, s, dist, t))
        };
        total = total.plus(partial.plus(QuadResult::exact(inside)).scale(b.mass));
    }
    Ok(total.into())
}

/// `N` about a point at distance `dist` from the centre of a unit radial
/// component.
fn ball_integrated_counting(d: Dimension, radial: &Radial, dist: f64, r: f64, spec: &QuadSpec) -> Estimate {
    let outer = radial.radius;
    if dist == 0.0 {
        let m = r.min(outer);
        let moment = radial.kernel_moment(d, 0.0, m);
        if moment == f64::NEG_INFINITY {
            return Estimate::exact(ExtReal::INFINITY);
        }
        return Estimate::exact(mass_times_kernel(d, radial.cdf(m), r) - moment);
    }
    if r >= dist + outer {
        let pot = radial.potential(d, dist);
        if pot == f64::NEG_INFINITY {
            return Estimate::exact(ExtReal::INFINITY);
        }
        return Estimate::exact(d.kernel(r) - pot);
    }
    let stats = InnerStats::default();
    let cuts = [dist - r, r - dist, dist + r, dist];
    let q = integrate_density(radial, (dist - r).max(0.0), dist + r, &cuts, spec, |s| {
        let inner = sphere_integrated_counting(d, s, dist, r, spec);
        stats.record(&inner);
        inner.value
    });
    stats.finish(q, 1.0).into()
}

/// `hat_d int_0^r mu(closed ball(y, t)) t^(1-d) dt`, computed as
/// `int (k(r) - k(|x - y|))^+ dmu(x)`; `+inf` when an atom sits at `y`.
pub fn integrated_counting(mu: &Measure, y: &Point, r: f64, spec: &QuadSpec) -> Result<Estimate> {
    mu.check_point(y)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::input(format!("radius must be positive, got {r}")));
    }
    let d = mu.dimension();
    let kr = d.kernel(r);
    let mut total = Estimate::exact(0.0);
    for a in mu.atoms() {
        let dist = a.point.dist(y);
        if dist <= r {
            let v = if dist == 0.0 { ExtReal::INFINITY } else { ExtReal::from_f64(a.mass * (kr - d.kernel(dist))) };
            total.value = total.value + v;
        }
    }
    for s in mu.spheres() {
        let q = sphere_integrated_counting(d, s.radius, s.center.dist(y), r, spec);
        total = add_nonneg(total, Estimate::from(q).weighted(s.mass));
    }
    for b in mu.balls() {
        let e = ball_integrated_counting(d, &b.radial, b.center.dist(y), r, spec);
        total = add_nonneg(total, e.weighted(b.mass));
    }
    Ok(total)
}

fn add_nonneg(a: Estimate, b: Estimate) -> Estimate {
    a.checked_plus(b).expect("nonnegative terms never cancel")
}

/// `hat_d int_r^R mu(closed ball(0, t)) t^(1-d) dt`, counting about the origin.
pub fn difference_counting(mu: &Measure, r: f64, big_r: f64, spec: &QuadSpec) -> Result<Estimate> {
    if !(r >= 0.0 && big_r > r && big_r.is_finite()) {
        return Err(Error::geometry(format!("need 0 <= r < R, got r = {r}, R = {big_r}")));
    }
    let d = mu.dimension();
    // for a point mass at distance rho
    let atom_term = |rho: f64| -> ExtReal {
        if rho >= big_r {
            ExtReal::ZERO
        } else if rho == 0.0 && r == 0.0 {
            ExtReal::INFINITY
        } else {
            ExtReal::from_f64(d.kernel(big_r) - d.kernel(rho.max(r)))
        }
    };
    let mut total = Estimate::exact(0.0);
    for a in mu.atoms() {
        total.value = total.value + atom_term(a.point.norm()).weighted(a.mass);
    }
    // N(r) about the origin vanishes for r = 0
    let below = |f: &dyn Fn(f64) -> Estimate| if r == 0.0 { Estimate::exact(0.0) } else { f(r) };
    for s in mu.spheres() {
        let dist = s.center.norm();
        let e = if dist == 0.0 {
            Estimate::exact(atom_term(s.radius))
        } else {
            let f = |t: f64| Estimate::from(sphere_integrated_counting(d, s.radius, dist, t, spec));
            difference(f(big_r), below(&f))
        };
        total = add_nonneg(total, e.weighted(s.mass));
    }
    for b in mu.balls() {
        let dist = b.center.norm();
        let e = if dist == 0.0 {
            let rad = &b.radial;
            let hi = big_r.min(rad.radius);
            let moment = if r < hi { rad.kernel_moment(d, r, hi) } else { 0.0 };
            if moment == f64::NEG_INFINITY {
                Estimate::exact(ExtReal::INFINITY)
            } else {
                Estimate::exact(
                    mass_times_kernel(d, rad.cdf(big_r), big_r) - mass_times_kernel(d, rad.cdf(r), r) - moment,
                )
            }
        } else {
            let f = |t: f64| ball_integrated_counting(d, &b.radial, dist, t, spec);
            difference(f(big_r), below(&f))
        };
        total = add_nonneg(total, e.weighted(b.mass));
    }
    Ok(total)
}

/// `N(R) - N(r)` with `N(r)` finite; clamps tiny negative rounding to 0.
fn difference(big: Estimate, small: Estimate) -> Estimate {
    if big.value.is_pos_inf() {
        return big;
    }
    let v = big.value.get() - small.value.get();
    Estimate {
        value: ExtReal::from_f64(v.max(0.0)),
        error: big.error + small.error,
        converged: big.converged && small.converged,
    }
}

/// `int k(|y - x|) dmu(y)`; `-inf` at atoms and where a singular radial
/// density makes the integral diverge.
pub fn potential(mu: &Measure, x: &Point) -> Result<ExtReal> {
    mu.check_point(x)?;
    Ok(potential_unchecked(mu, x))
}

pub(crate) fn potential_unchecked(mu: &Measure, x: &Point) -> ExtReal {
    let d = mu.dimension();
    let mut total = 0.0;
    for a in mu.atoms() {
        total += a.mass * d.kernel(a.point.dist(x));
    }
    for s in mu.spheres() {
        total += s.mass * d.kernel(s.radius.max(s.center.dist(x)));
    }
    for b in mu.balls() {
        total += b.mass * b.radial.potential(d, b.center.dist(x));
    }
    ExtReal::from_f64(total)
}

/// `int f dmu`. Atoms are summed exactly; spheres use sphere means and radial
/// components an outer radial quadrature of sphere means.
pub fn integrate<U: Evaluate + ?Sized>(mu: &Measure, f: &U, spec: &QuadSpec) -> Result<Estimate> {
    if f.dimension() != mu.dimension() {
        return Err(Error::input(format!(
            "function lives in dimension {}, measure in dimension {}",
            f.dimension().get(),
            mu.dimension().get()
        )));
    }
    spec.validate()?;
    let mut total = Estimate::exact(0.0);
    for a in mu.atoms() {
        let v = ExtReal::new(f.eval(&a.point)).ok_or_else(|| Error::input("integrand is undefined at an atom"))?;
        total.value = total
            .value
            .checked_add(v.weighted(a.mass))
            .ok_or_else(|| Error::input("integral has the form inf - inf"))?;
    }
    if !(mu.spheres().is_empty() && mu.balls().is_empty()) {
        mu.dimension().require_quadrature()?;
    }
    let mut parts = QuadResult::exact(0.0);
    for s in mu.spheres() {
        parts = parts.plus(mean_unchecked(f, &s.center, s.radius, spec).scale(s.mass));
    }
    let hints = f.singular_points();
    for b in mu.balls() {
        let cuts: Vec<f64> = hints.iter().map(|p| p.dist(&b.center)).collect();
        let stats = InnerStats::default();
        let q = integrate_density(&b.radial, 0.0, b.radial.radius, &cuts, spec, |s| {
            let inner = mean_unchecked(f, &b.center, s, spec);
            stats.record(&inner);
            inner.value
        });
        parts = parts.plus(stats.finish(q, 1.0).scale(b.mass));
    }
    total.checked_plus(parts.into()).ok_or_else(|| Error::input("integral has the form inf - inf"))
}

/// `int pt_mu dmu`; `-inf` as soon as there is an atom.
pub fn energy(mu: &Measure, spec: &QuadSpec) -> Result<Estimate> {
    if mu.is_zero() {
        return Ok(Estimate::exact(0.0));
    }
    if mu.has_atoms() {
        return Ok(Estimate::exact(ExtReal::NEG_INFINITY));
    }
    let pt = PotentialEval { mu, hints: mu.component_centers() };
    integrate(mu, &pt, spec)
}

struct PotentialEval<'a> {
    mu: &'a Measure,
    hints: Vec<Point>,
}

impl Evaluate for PotentialEval<'_> {
    fn dimension(&self) -> Dimension {
        self.mu.dimension()
    }

    fn eval(&self, x: &Point) -> f64 {
        potential_unchecked(self.mu, x).get()
    }

    fn singular_points(&self) -> Vec<Point> {
        self.hints.clone()
    }
}
