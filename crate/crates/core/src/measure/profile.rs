//! Rotationally symmetric radial profiles.
//!
//! A profile describes how the mass of a radial component is spread over
//! distance from its centre: the shell mass density is a finite sum of power
//! pieces `coef * s^exp` on `[lo, hi]`, normalised to total mass one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{sphere_area, Dimension};

/// Volume density of a radial component as a function of `t = |x - c|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RadialProfile {
    /// Density proportional to `t^power` on `[0, radius]`; `power > -d`.
    /// `power = 0` is the normalised volume (area) measure.
    Power(f64),
    /// Piecewise constant density `values[i]` on `[breaks[i], breaks[i+1]]`.
    Shells { breaks: Vec<f64>, values: Vec<f64> },
}

impl Default for RadialProfile {
    fn default() -> Self {
        RadialProfile::Power(0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub coef: f64,
    pub exp: f64,
}

impl Piece {
    /// `int_lo^s coef t^exp dt` for `s` in the piece.
    fn partial_mass(&self, s: f64) -> f64 {
        let s = s.clamp(self.lo, self.hi);
        let e1 = self.exp + 1.0;
        self.coef * (s.powf(e1) - self.lo.powf(e1)) / e1
    }

    fn density(&self, s: f64) -> f64 {
        self.coef * s.powf(self.exp)
    }

    /// `int_x1^x2 coef s^exp k(s) ds` for `lo <= x1 <= x2 <= hi`; may be `-inf`.
    fn kernel_moment(&self, d: Dimension, x1: f64, x2: f64) -> f64 {
        if x2 <= x1 {
            return 0.0;
        }
        let e1 = self.exp + 1.0;
        if d.get() == 2 {
            // antiderivative of s^e ln s, vanishing at s = 0 since e + 1 > 0
            let f = |s: f64| {
                if s == 0.0 {
                    0.0
                } else {
                    s.powf(e1) * (s.ln() / e1 - 1.0 / (e1 * e1))
                }
            };
            return self.coef * (f(x2) - f(x1));
        }
        // k(s) = -s^(2-d)
        let q1 = self.exp + 3.0 - d.get() as f64;
        let primitive = if q1.abs() < 1e-14 {
            if x1 == 0.0 {
                return f64::NEG_INFINITY;
            }
            (x2 / x1).ln()
        } else if q1 < 0.0 && x1 == 0.0 {
            return f64::NEG_INFINITY;
        } else {
            (x2.powf(q1) - x1.powf(q1)) / q1
        };
        -self.coef * primitive
    }
}

pub(crate) fn build_pieces(profile: &RadialProfile, radius: f64, d: Dimension) -> Result<Vec<Piece>> {
    let dd = d.get() as f64;
    let area = sphere_area(d);
    let mut pieces = match profile {
        RadialProfile::Power(p) => {
            if !(p.is_finite() && *p > -dd) {
                return Err(Error::parse("profile.power", format!("must exceed -d = {}, got {p}", -dd)));
            }
            vec![Piece { lo: 0.0, hi: radius, coef: 1.0, exp: p + dd - 1.0 }]
        }
        RadialProfile::Shells { breaks, values } => {
            if breaks.len() != values.len() + 1 || values.is_empty() {
                return Err(Error::parse("profile.shells", "need one more break than values and at least one value"));
            }
            if breaks[0] != 0.0 {
                return Err(Error::parse("profile.shells.breaks", "first break must be 0"));
            }
            if breaks.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::parse("profile.shells.breaks", "breaks must increase strictly"));
            }
            if (breaks[breaks.len() - 1] - radius).abs() > 1e-12 * radius {
                return Err(Error::parse("profile.shells.breaks", "last break must equal the radius"));
            }
            if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                return Err(Error::parse("profile.shells.values", "values must be finite and >= 0"));
            }
            breaks
                .windows(2)
                .zip(values)
                .filter(|(_, v)| **v > 0.0)
                .map(|(w, v)| Piece { lo: w[0], hi: w[1], coef: v * area, exp: dd - 1.0 })
                .collect()
        }
    };
    let total: f64 = pieces.iter().map(|p| p.partial_mass(p.hi)).sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::parse("profile", "profile carries no mass"));
    }
    for p in &mut pieces {
        p.coef /= total;
    }
    Ok(pieces)
}

/// Normalised radial mass distribution built from a profile.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Radial {
    pub pieces: Vec<Piece>,
    pub radius: f64,
}

impl Radial {
    /// Mass fraction within distance `s` of the centre.
    pub fn cdf(&self, s: f64) -> f64 {
        self.pieces.iter().filter(|p| s > p.lo).map(|p| p.partial_mass(s)).sum::<f64>().min(1.0)
    }

    /// Shell mass density at distance `s`.
    pub fn density(&self, s: f64) -> f64 {
        self.pieces.iter().find(|p| s >= p.lo && s <= p.hi).map(|p| p.density(s)).unwrap_or(0.0)
    }

    /// `int_x1^x2 g(s) k(s) ds`, exact.
    pub fn kernel_moment(&self, d: Dimension, x1: f64, x2: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| {
                let a = x1.max(p.lo);
                let b = x2.min(p.hi);
                if b > a {
                    p.kernel_moment(d, a, b)
                } else {
                    0.0
                }
            })
            .sum()
    }

    /// Potential of the unit-mass component at distance `dist` from its
    /// centre: `k(dist) cdf(dist) + int_dist^radius g k`.
    pub fn potential(&self, d: Dimension, dist: f64) -> f64 {
        let inner = self.cdf(dist);
        let near = if inner == 0.0 { 0.0 } else { inner * d.kernel(dist) };
        near + self.kernel_moment(d, dist, self.radius)
    }

    pub fn breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.pieces.iter().flat_map(|p| [p.lo, p.hi]).collect();
        b.dedup();
        b
    }

    /// Closed support intervals `[lo, hi]` in distance from the centre.
    pub fn support(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for p in &self.pieces {
            match out.last_mut() {
                Some(last) if last.1 == p.lo => last.1 = p.hi,
                _ => out.push((p.lo, p.hi)),
            }
        }
        out
    }
}
