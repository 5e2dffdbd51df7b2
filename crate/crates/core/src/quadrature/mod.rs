//! Numerical integration: adaptive Gauss-Kronrod on intervals, means over
//! circles and spheres, and Riemann-Stieltjes sums against counting functions.

mod gk;
mod sphere;
mod stieltjes;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;

pub use gk::integrate_1d;
pub(crate) use sphere::mean_unchecked;
pub use sphere::{sphere_mean, sphere_mean_at, Evaluate, FnEval};
pub use stieltjes::{stieltjes_against_jumps, CountingFunction};

/// Tolerances and limits for every quadrature in the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Interior points where the integrand is singular or not smooth.
    pub singular_points: Vec<f64>,
    /// Starting node count of the periodic trapezoid rule on circles.
    pub circle_nodes: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 1 << 15,
            singular_points: Vec::new(),
            circle_nodes: 512,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::parse("quad", "tolerances must be positive"));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::parse("quad.max_subdivisions", "must be at least 8"));
        }
        if self.circle_nodes < 8 {
            return Err(Error::parse("quad.circle_nodes", "must be at least 8"));
        }
        Ok(())
    }

    pub fn with_singular_points(&self, points: impl IntoIterator<Item = f64>) -> QuadSpec {
        let mut spec = self.clone();
        spec.singular_points = points.into_iter().collect();
        spec
    }

    /// Tolerance target for an estimate `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value of a quadrature with its error estimate.
///
/// `converged == false` means the requested tolerance was not met (or the
/// integrand produced non-finite values at nodes); `value` is then the best
/// available estimate and must not be trusted silently.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    pub fn exact(value: f64) -> Self {
        QuadResult { value, error: 0.0, evaluations: 0, converged: true }
    }

    /// Sum of two independent estimates.
    pub fn plus(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            error: self.error + other.error,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, s: f64) -> QuadResult {
        QuadResult { value: self.value * s, error: self.error * s.abs(), ..self }
    }
}

/// An extended-real value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: ExtReal,
    pub error: f64,
    pub converged: bool,
}

impl Estimate {
    pub fn exact(value: impl Into<ExtReal>) -> Self {
        Estimate { value: value.into(), error: 0.0, converged: true }
    }

    /// Sum of independent estimates; `None` for `inf - inf`.
    pub fn checked_plus(self, other: Estimate) -> Option<Estimate> {
        Some(Estimate {
            value: self.value.checked_add(other.value)?,
            error: self.error + other.error,
            converged: self.converged && other.converged,
        })
    }

    /// Multiplication by a nonnegative weight (`0 * inf = 0`).
    pub fn weighted(self, w: f64) -> Estimate {
        Estimate { value: self.value.weighted(w), error: self.error * w, converged: self.converged }
    }
}

impl From<QuadResult> for Estimate {
    fn from(q: QuadResult) -> Self {
        match ExtReal::new(q.value) {
            Some(value) => Estimate { value, error: q.error, converged: q.converged },
            None => Estimate { value: ExtReal::ZERO, error: f64::INFINITY, converged: false },
        }
    }
}

/// Accumulates the worst inner error of a nested quadrature.
#[derive(Default)]
pub(crate) struct InnerStats {
    max_error: std::cell::Cell<f64>,
    failed: std::cell::Cell<bool>,
    evaluations: std::cell::Cell<usize>,
}

impl InnerStats {
    pub(crate) fn record(&self, r: &QuadResult) {
        if r.error > self.max_error.get() {
            self.max_error.set(r.error);
        }
        if !r.converged {
            self.failed.set(true);
        }
        self.evaluations.set(self.evaluations.get() + r.evaluations);
    }

    /// Combine with the outer result; `weight` bounds the outer measure of
    /// the inner errors.
    pub(crate) fn finish(&self, outer: QuadResult, weight: f64) -> QuadResult {
        QuadResult {
            value: outer.value,
            error: outer.error + self.max_error.get() * weight,
            evaluations: outer.evaluations + self.evaluations.get(),
            converged: outer.converged && !self.failed.get(),
        }
    }
}
