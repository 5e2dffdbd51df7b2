//! Dimension-dependent constants and the fundamental kernels.
//!
//! The kernel profile is `k(t) = ln t` in the plane and `k(t) = -t^(2-d)` for
//! `d > 2`, with `k(0) = -inf`. With this normalisation `k(|x - y|)` has unit
//! Riesz charge at `y` in every dimension.
//!
//! The unit sphere areas follow `s_{d-1} = 2 pi^(d/2) / Gamma(d/2)`. Note that
//! the area of the unit 3-sphere (`d = 4`) is `2 pi^2`; a table that lists
//! `pi^2` for it is a misprint.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::point::Point;

/// Relative tolerance used when a point is required to lie on a sphere.
pub const BOUNDARY_REL_TOL: f64 = 1e-12;

/// Ambient dimension `d >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dimension(usize);

impl Dimension {
    pub const PLANE: Dimension = Dimension(2);
    pub const SPACE: Dimension = Dimension(3);

    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::input(format!("dimension must be at least 2, got {d}")));
        }
        Ok(Dimension(d))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Sphere means, Poisson integrals and non-atomic measure components are
    /// implemented for `d = 2, 3` only.
    pub fn has_quadrature(self) -> bool {
        self.0 == 2 || self.0 == 3
    }

    pub(crate) fn require_quadrature(self) -> Result<()> {
        if self.has_quadrature() {
            Ok(())
        } else {
            Err(Error::UnsupportedDimension(self.0))
        }
    }

    /// `k_{d-2}(t)` as a raw float: `-inf` at `t = 0`. No argument checks.
    #[inline]
    pub fn kernel(self, t: f64) -> f64 {
        match self.0 {
            2 => t.ln(),
            3 => -1.0 / t,
            d => -t.powi(2 - d as i32),
        }
    }

    /// `max{1, d - 2}`.
    pub fn hat(self) -> f64 {
        hat_d(self) as f64
    }
}

impl TryFrom<usize> for Dimension {
    type Error = Error;
    fn try_from(d: usize) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for usize {
    fn from(d: Dimension) -> usize {
        d.0
    }
}

/// The kernel `k_{d-2}(t)` for `t >= 0`.
pub fn kappa(t: f64, d: Dimension) -> Result<ExtReal> {
    if !(t >= 0.0) {
        return Err(Error::input(format!("kernel argument must be >= 0, got {t}")));
    }
    Ok(ExtReal::from_f64(d.kernel(t)))
}

/// `max{1, d - 2}`.
pub fn hat_d(d: Dimension) -> usize {
    d.get().saturating_sub(2).max(1)
}

/// `Gamma(d / 2)` for integer `d >= 1`, via the recurrence from
/// `Gamma(1) = 1` or `Gamma(1/2) = sqrt(pi)`.
fn gamma_half(d: usize) -> f64 {
    let (mut x, mut g) = if d.is_multiple_of(2) { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = d as f64 / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    g
}

/// Surface area `s_{d-1}` of the unit sphere in `R^d`.
pub fn sphere_area(d: Dimension) -> f64 {
    let half = d.get() as f64 / 2.0;
    2.0 * PI.powf(half) / gamma_half(d.get())
}

fn check_dim(p: &Point, d: Dimension, what: &str) -> Result<()> {
    if p.dim() != d.get() {
        return Err(Error::input(format!("{what} has {} coordinates, expected {}", p.dim(), d.get())));
    }
    Ok(())
}

/// Poisson kernel of the ball `B(R)` including the `1/s_{d-1}` factor, so that
/// it integrates to one against surface measure on `|y| = R`.
pub fn poisson_kernel(x: &Point, y: &Point, radius: f64, d: Dimension) -> Result<f64> {
    poisson_kernel_with_tol(x, y, radius, d, BOUNDARY_REL_TOL)
}

pub fn poisson_kernel_with_tol(x: &Point, y: &Point, radius: f64, d: Dimension, rel_tol: f64) -> Result<f64> {
    check_dim(x, d, "x")?;
    check_dim(y, d, "y")?;
    if !(radius > 0.0) {
        return Err(Error::geometry(format!("radius must be positive, got {radius}")));
    }
    if !(x.norm() < radius) {
        return Err(Error::geometry(format!("x must lie in the open ball of radius {radius}, |x| = {}", x.norm())));
    }
    if ((y.norm() - radius) / radius).abs() > rel_tol {
        return Err(Error::geometry(format!("y must lie on the sphere of radius {radius}, |y| = {}", y.norm())));
    }
    Ok(poisson_kernel_unchecked(x, y, radius, d))
}

#[inline]
pub(crate) fn poisson_kernel_unchecked(x: &Point, y: &Point, radius: f64, d: Dimension) -> f64 {
    let dist = x.dist(y);
    let x2 = x.dot(x);
    (radius * radius - x2) / (radius * dist.powi(d.get() as i32)) / sphere_area(d)
}

/// Green function of the ball `B(R)` with pole `y`, in the kernel
/// normalisation: `k(|(R/|y|) y - (|y|/R) x|) - k(|y - x|)`.
///
/// The image distance is evaluated through the symmetric identity
/// `|(R/|y|) y - (|y|/R) x|^2 = R^2 - 2 x.y + |x|^2 |y|^2 / R^2`, which also
/// covers the limit `y = 0`. Returns `+inf` for `x = y`.
pub fn green_ball(x: &Point, y: &Point, radius: f64, d: Dimension) -> Result<ExtReal> {
    check_dim(x, d, "x")?;
    check_dim(y, d, "y")?;
    if !(radius > 0.0) {
        return Err(Error::geometry(format!("radius must be positive, got {radius}")));
    }
    let limit = radius * (1.0 + BOUNDARY_REL_TOL);
    if x.norm() > limit || y.norm() > limit {
        return Err(Error::geometry(format!("x and y must lie in the closed ball of radius {radius}")));
    }
    Ok(green_ball_unchecked(x, y, radius, d))
}

#[inline]
pub(crate) fn green_ball_unchecked(x: &Point, y: &Point, radius: f64, d: Dimension) -> ExtReal {
    let dist = x.dist(y);
    if dist == 0.0 {
        return ExtReal::INFINITY;
    }
    let image2 = radius * radius - 2.0 * x.dot(y) + x.dot(x) * y.dot(y) / (radius * radius);
    let image = image2.max(0.0).sqrt();
    let g = d.kernel(image) - d.kernel(dist);
    ExtReal::from_f64(g.max(0.0))
}

/// `A_d(r, R) = 5 max{1, d-2} ((R+r)/(R-r))^(d-1) max{1, (R-r)^(d-2)}`.
pub fn constant_a(r: f64, big_r: f64, d: Dimension) -> Result<f64> {
    if !(r > 0.0 && r < big_r && big_r.is_finite()) {
        return Err(Error::geometry(format!("need 0 < r < R, got r = {r}, R = {big_r}")));
    }
    let dd = d.get() as i32;
    let ratio = ((big_r + r) / (big_r - r)).powi(dd - 1);
    let gap = (big_r - r).powi(dd - 2).max(1.0);
    Ok(5.0 * d.hat() * ratio * gap)
}
