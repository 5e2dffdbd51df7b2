use crate::dsh::DshFunction;
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::kernels::{green_ball_unchecked, poisson_kernel_unchecked, sphere_area, Dimension, BOUNDARY_REL_TOL};
use crate::measure::{difference_counting, radial_counting, Measure};
use crate::point::Point;
use crate::quadrature::{sphere_mean, Evaluate};

use super::report::{CheckReport, Sides};
use super::CheckOptions;

/// `lower(R*) <= N(R*, R) / (k(R) - k(R*))` for a measure `delta` counted
/// about the origin.
pub fn verify_lemma3(delta: &Measure, r_star: f64, big_r: f64, opts: &CheckOptions) -> Result<CheckReport> {
    if !(r_star > 0.0 && big_r > r_star && big_r.is_finite()) {
        return Err(Error::geometry(format!("need 0 < R* < R, got R* = {r_star}, R = {big_r}")));
    }
    let d = delta.dimension();
    let lhs = radial_counting(delta, &Point::origin(d.get()), r_star, &opts.quad)?;
    let n = difference_counting(delta, r_star, big_r, &opts.quad)?;
    let denom = d.kernel(big_r) - d.kernel(r_star);
    let sides = Sides {
        lhs: lhs.value,
        rhs: n.value.weighted(1.0 / denom),
        error: lhs.error + n.error / denom,
        converged: lhs.converged && n.converged,
    };
    Ok(CheckReport::inequality("lemma3", sides, opts.tolerance, Vec::new()))
}

/// Right-hand side of the Poisson-Jensen formula in the ball of radius `R`:
/// Poisson integral of `U` minus the Green potential of its charges.
pub struct PoissonJensen {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

struct PoissonIntegrand<'a> {
    u: &'a DshFunction,
    x: &'a Point,
    radius: f64,
    scale: f64,
}

impl Evaluate for PoissonIntegrand<'_> {
    fn dimension(&self) -> Dimension {
        self.u.dimension()
    }

    fn eval(&self, y: &Point) -> f64 {
        self.scale * poisson_kernel_unchecked(self.x, y, self.radius, self.u.dimension()) * self.u.eval(y)
    }

    fn singular_points(&self) -> Vec<Point> {
        let mut p = self.u.singular_points();
        // the kernel peaks in the direction of x
        if self.x.norm() > 0.0 {
            p.push(self.x.scaled(self.radius / self.x.norm()));
        }
        p
    }
}

pub fn poisson_jensen_rhs(u: &DshFunction, x: &Point, big_r: f64, opts: &CheckOptions) -> Result<PoissonJensen> {
    let d = u.dimension();
    d.require_quadrature()?;
    if x.dim() != d.get() {
        return Err(Error::input("point and function live in different dimensions"));
    }
    if !(big_r > 0.0 && x.norm() < big_r) {
        return Err(Error::geometry(format!("need |x| < R, got |x| = {}, R = {big_r}", x.norm())));
    }
    for c in u.charges() {
        if c.location == *x {
            return Err(Error::geometry("x sits on a charge"));
        }
        if (c.location.norm() - big_r).abs() <= BOUNDARY_REL_TOL * big_r {
            return Err(Error::geometry("a charge lies on the sphere |y| = R"));
        }
    }
    // mean over the sphere of s R^(d-1) P(x, y) U(y)
    let integrand = PoissonIntegrand { u, x, radius: big_r, scale: sphere_area(d) * big_r.powi(d.get() as i32 - 1) };
    let poisson = sphere_mean(&integrand, big_r, &opts.quad)?;
    let green: f64 = u
        .charges()
        .iter()
        .filter(|c| c.location.norm() < big_r)
        .map(|c| c.coefficient * green_ball_unchecked(x, &c.location, big_r, d).get())
        .sum();
    Ok(PoissonJensen { value: poisson.value - green, error: poisson.error, converged: poisson.converged })
}

/// `|U(x) - (Poisson integral - Green potential of the charges)|`.
pub fn verify_poisson_jensen(u: &DshFunction, x: &Point, big_r: f64, opts: &CheckOptions) -> Result<CheckReport> {
    let rhs = poisson_jensen_rhs(u, x, big_r, opts)?;
    let lhs = u.evaluate(x)?;
    Ok(CheckReport::residual(
        "poisson_jensen",
        lhs.get(),
        rhs.value,
        rhs.error,
        rhs.converged,
        opts.residual_tolerance,
        Vec::new(),
    ))
}

/// Upper bound of the Poisson kernel of the sphere `|y| = R` for `|x| <= r`.
pub fn poisson_kernel_bound(r: f64, big_r: f64, d: Dimension) -> f64 {
    (big_r + r) / (big_r * (big_r - r).powi(d.get() as i32 - 1)) / sphere_area(d)
}

/// Upper bound of the Green function of `B(R)` for `|x| <= r`:
/// `k(R + r) - k(|y - x|)`.
pub fn green_bound(x: &Point, y: &Point, r: f64, big_r: f64, d: Dimension) -> ExtReal {
    let t = x.dist(y);
    if t == 0.0 {
        return ExtReal::INFINITY;
    }
    ExtReal::from_f64(d.kernel(big_r + r) - d.kernel(t))
}
