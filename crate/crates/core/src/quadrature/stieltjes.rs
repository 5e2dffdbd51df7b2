use std::fmt;
use std::sync::Arc;

use super::{integrate_1d, QuadResult, QuadSpec};
use crate::error::{Error, Result};

type Density = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A nondecreasing, right-continuous function on `[0, inf)`: an initial value,
/// a finite list of jumps and an optional absolutely continuous part given by
/// its derivative.
#[derive(Clone, Default)]
pub struct CountingFunction {
    base: f64,
    jumps: Vec<(f64, f64)>,
    density: Option<Density>,
    density_breaks: Vec<f64>,
    spec: QuadSpec,
}

impl fmt::Debug for CountingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CountingFunction")
            .field("base", &self.base)
            .field("jumps", &self.jumps)
            .field("has_density", &self.density.is_some())
            .finish()
    }
}

impl CountingFunction {
    /// Pure jump function with value `base` on `[0, t_1)`. Jumps at equal
    /// locations are merged.
    pub fn from_jumps(base: f64, jumps: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        if !(base >= 0.0 && base.is_finite()) {
            return Err(Error::input("counting function base value must be finite and >= 0"));
        }
        let mut list: Vec<(f64, f64)> = Vec::new();
        for (t, size) in jumps {
            if !(t >= 0.0 && t.is_finite()) || !(size >= 0.0 && size.is_finite()) {
                return Err(Error::input(format!("bad jump ({t}, {size})")));
            }
            if size > 0.0 {
                list.push((t, size));
            }
        }
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(list.len());
        for (t, s) in list {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += s,
                _ => merged.push((t, s)),
            }
        }
        Ok(CountingFunction { base, jumps: merged, ..Default::default() })
    }

    /// Adds an absolutely continuous part with derivative `density >= 0`,
    /// smooth between `breaks`.
    pub fn with_density<F>(mut self, density: F, breaks: Vec<f64>) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.density = Some(Arc::new(density));
        self.density_breaks = breaks;
        self
    }

    pub fn with_spec(mut self, spec: QuadSpec) -> Self {
        self.spec = spec;
        self
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn jumps(&self) -> &[(f64, f64)] {
        &self.jumps
    }

    pub fn has_density(&self) -> bool {
        self.density.is_some()
    }

    /// `h(t)`.
    pub fn value(&self, t: f64) -> f64 {
        let jumps: f64 = self.jumps.iter().take_while(|(s, _)| *s <= t).map(|(_, m)| m).sum();
        let cont = match &self.density {
            Some(g) if t > 0.0 => {
                let spec = self.spec.with_singular_points(self.density_breaks.iter().copied());
                integrate_1d(|s| g(s), 0.0, t, &spec).value
            }
            _ => 0.0,
        };
        self.base + jumps + cont
    }

    /// Jump points plus density breakpoints.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.jumps.iter().map(|(t, _)| *t).chain(self.density_breaks.iter().copied()).collect()
    }
}

/// `int_(a, b] g dh`: exact sum over the jumps of `h` in `(a, b]` plus the
/// quadrature of `g h'` for the continuous part. Jump locations come from the
/// counting function itself and are never discretised.
///
/// An infinite `g` at a jump point makes the result infinite; `-inf + inf`
/// cannot occur for the monotone kernels used here but is reported as
/// non-converged if it does.
pub fn stieltjes_against_jumps<G: Fn(f64) -> f64>(
    g: G,
    h: &CountingFunction,
    a: f64,
    b: f64,
    spec: &QuadSpec,
) -> QuadResult {
    let mut sum = 0.0;
    for &(t, size) in &h.jumps {
        if t > a && t <= b {
            sum += g(t) * size;
        }
    }
    let mut result = QuadResult::exact(sum);
    if let Some(density) = &h.density {
        let local = spec.with_singular_points(h.density_breaks.iter().copied());
        let cont = integrate_1d(|t| g(t) * density(t), a, b, &local);
        result = result.plus(cont);
    }
    if result.value.is_nan() {
        result.converged = false;
    }
    result
}
