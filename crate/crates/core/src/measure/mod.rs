//! Finite Borel measures built from atoms, uniform spheres and rotationally
//! symmetric radial densities, with their counting functions and potentials.
//!
//! # JSON format
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "atoms":   [{"point": [0.5, 0.0], "mass": 1.0}],
//!   "spheres": [{"center": [0.0, 0.0], "radius": 0.5, "mass": 1.0}],
//!   "radial":  [{"center": [0.0, 0.0], "radius": 1.0, "mass": 1.0,
//!                "profile": {"power": 0.0}}]
//! }
//! ```
//!
//! `center` defaults to the origin and `profile` to `{"power": 0.0}` (the
//! normalised volume measure of the ball). A shell profile is written
//! `{"shells": {"breaks": [0.0, 0.5, 1.0], "values": [0.0, 1.0]}}`. All three
//! lists are optional. Non-atomic components need `dimension` 2 or 3.

mod functionals;
mod geometry;
mod profile;
mod sup;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Dimension;
use crate::point::Point;

pub use functionals::{difference_counting, energy, integrate, integrated_counting, potential, radial_counting};
pub use profile::RadialProfile;
pub use sup::{inf_potential_on_support, sup_integrated_counting, Grid, Region, SupReport};

use profile::{build_pieces, Radial};

/// A point mass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub point: Point,
    pub mass: f64,
}

/// Uniform mass on the sphere `|x - center| = radius`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereComponent {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Point>,
    pub radius: f64,
    pub mass: f64,
}

/// Rotationally symmetric mass on the ball `|x - center| <= radius`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialComponent {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Point>,
    pub radius: f64,
    pub mass: f64,
    #[serde(default)]
    pub profile: RadialProfile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureRepr {
    dimension: Dimension,
    #[serde(default)]
    atoms: Vec<Atom>,
    #[serde(default)]
    spheres: Vec<SphereComponent>,
    #[serde(default)]
    radial: Vec<RadialComponent>,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Sphere {
    pub center: Point,
    pub radius: f64,
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Ball {
    pub center: Point,
    pub mass: f64,
    pub radial: Radial,
}

/// A finite measure on `R^d`. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    dim: Dimension,
    repr: MeasureRepr,
    atoms: Vec<Atom>,
    spheres: Vec<Sphere>,
    balls: Vec<Ball>,
}

fn check_point(p: &Point, d: Dimension, field: &str) -> Result<()> {
    if p.dim() != d.get() {
        return Err(Error::parse(field, format!("expected {} coordinates, got {}", d.get(), p.dim())));
    }
    if !p.is_finite() {
        return Err(Error::parse(field, "coordinates must be finite"));
    }
    Ok(())
}

fn check_positive(x: f64, field: &str) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::parse(field, format!("must be positive and finite, got {x}")));
    }
    Ok(())
}

impl Measure {
    /// The zero measure.
    pub fn zero(d: Dimension) -> Self {
        Measure {
            dim: d,
            repr: MeasureRepr { dimension: d, atoms: Vec::new(), spheres: Vec::new(), radial: Vec::new() },
            atoms: Vec::new(),
            spheres: Vec::new(),
            balls: Vec::new(),
        }
    }

    pub fn point_mass(point: Point, mass: f64) -> Result<Self> {
        let d = Dimension::new(point.dim())?;
        Measure::zero(d).with_atom(point, mass)
    }

    pub fn uniform_sphere(center: Point, radius: f64, mass: f64) -> Result<Self> {
        let d = Dimension::new(center.dim())?;
        Measure::zero(d).with_sphere(center, radius, mass)
    }

    /// Normalised volume measure of a ball, scaled to `mass`.
    pub fn uniform_ball(center: Point, radius: f64, mass: f64) -> Result<Self> {
        let d = Dimension::new(center.dim())?;
        Measure::zero(d).with_radial(center, radius, mass, RadialProfile::Power(0.0))
    }

    pub fn with_atom(mut self, point: Point, mass: f64) -> Result<Self> {
        let i = self.atoms.len();
        check_point(&point, self.dim, &format!("atoms[{i}].point"))?;
        check_positive(mass, &format!("atoms[{i}].mass"))?;
        let atom = Atom { point, mass };
        self.repr.atoms.push(atom.clone());
        self.atoms.push(atom);
        Ok(self)
    }

    pub fn with_sphere(mut self, center: Point, radius: f64, mass: f64) -> Result<Self> {
        let i = self.spheres.len();
        self.dim.require_quadrature()?;
        check_point(&center, self.dim, &format!("spheres[{i}].center"))?;
        check_positive(radius, &format!("spheres[{i}].radius"))?;
        check_positive(mass, &format!("spheres[{i}].mass"))?;
        self.repr.spheres.push(SphereComponent { center: Some(center.clone()), radius, mass });
        self.spheres.push(Sphere { center, radius, mass });
        Ok(self)
    }

    pub fn with_radial(mut self, center: Point, radius: f64, mass: f64, profile: RadialProfile) -> Result<Self> {
        let i = self.balls.len();
        self.dim.require_quadrature()?;
        check_point(&center, self.dim, &format!("radial[{i}].center"))?;
        check_positive(radius, &format!("radial[{i}].radius"))?;
        check_positive(mass, &format!("radial[{i}].mass"))?;
        let pieces = build_pieces(&profile, radius, self.dim).map_err(|e| match e {
            Error::Parse { field, message } => Error::parse(format!("radial[{i}].{field}"), message),
            other => other,
        })?;
        self.repr.radial.push(RadialComponent { center: Some(center.clone()), radius, mass, profile });
        self.balls.push(Ball { center, mass, radial: Radial { pieces, radius } });
        Ok(self)
    }

    fn from_repr(repr: MeasureRepr) -> Result<Self> {
        let d = repr.dimension;
        let origin = Point::origin(d.get());
        let mut m = Measure::zero(d);
        for a in repr.atoms {
            m = m.with_atom(a.point, a.mass)?;
        }
        for s in repr.spheres {
            m = m.with_sphere(s.center.unwrap_or_else(|| origin.clone()), s.radius, s.mass)?;
        }
        for r in repr.radial {
            m = m.with_radial(r.center.unwrap_or_else(|| origin.clone()), r.radius, r.mass, r.profile)?;
        }
        Ok(m)
    }

    /// Parses the JSON description. Errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let repr: MeasureRepr = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))?;
        Measure::from_repr(repr)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let repr: MeasureRepr = serde_path_to_error::deserialize(value)
            .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))?;
        Measure::from_repr(repr)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.repr).expect("measure description serialises")
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn has_atoms(&self) -> bool {
        !self.atoms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.spheres.is_empty() && self.balls.is_empty()
    }

    pub fn is_atomic(&self) -> bool {
        self.spheres.is_empty() && self.balls.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum::<f64>()
            + self.spheres.iter().map(|s| s.mass).sum::<f64>()
            + self.balls.iter().map(|b| b.mass).sum::<f64>()
    }

    /// Smallest `r` with `supp mu` inside the closed ball `B(r)`.
    pub fn support_radius(&self) -> f64 {
        let atoms = self.atoms.iter().map(|a| a.point.norm());
        let spheres = self.spheres.iter().map(|s| s.center.norm() + s.radius);
        let balls = self.balls.iter().map(|b| {
            let outer = b.radial.support().last().map(|s| s.1).unwrap_or(0.0);
            b.center.norm() + outer
        });
        atoms.chain(spheres).chain(balls).fold(0.0, f64::max)
    }

    /// Centres of spheres and radial components, where counting functions and
    /// potentials are most singular.
    pub fn component_centers(&self) -> Vec<Point> {
        self.spheres.iter().map(|s| s.center.clone()).chain(self.balls.iter().map(|b| b.center.clone())).collect()
    }

    /// The measure translated by `v`.
    pub fn translated(&self, v: &Point) -> Result<Self> {
        let mut m = Measure::zero(self.dim);
        for a in &self.atoms {
            m = m.with_atom(&a.point + v, a.mass)?;
        }
        for s in &self.spheres {
            m = m.with_sphere(&s.center + v, s.radius, s.mass)?;
        }
        for (b, r) in self.balls.iter().zip(&self.repr.radial) {
            m = m.with_radial(&b.center + v, r.radius, r.mass, r.profile.clone())?;
        }
        Ok(m)
    }

    /// The measure multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        check_positive(factor, "factor")?;
        let mut m = Measure::zero(self.dim);
        for a in &self.atoms {
            m = m.with_atom(a.point.clone(), a.mass * factor)?;
        }
        for s in &self.spheres {
            m = m.with_sphere(s.center.clone(), s.radius, s.mass * factor)?;
        }
        for (b, r) in self.balls.iter().zip(&self.repr.radial) {
            m = m.with_radial(b.center.clone(), r.radius, r.mass * factor, r.profile.clone())?;
        }
        Ok(m)
    }

    /// Sum of two measures of the same dimension.
    pub fn plus(&self, other: &Measure) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::input("cannot add measures of different dimensions"));
        }
        let mut m = self.clone();
        for a in &other.atoms {
            m = m.with_atom(a.point.clone(), a.mass)?;
        }
        for s in &other.spheres {
            m = m.with_sphere(s.center.clone(), s.radius, s.mass)?;
        }
        for (b, r) in other.balls.iter().zip(&other.repr.radial) {
            m = m.with_radial(b.center.clone(), r.radius, r.mass, r.profile.clone())?;
        }
        Ok(m)
    }

    pub(crate) fn spheres(&self) -> &[Sphere] {
        &self.spheres
    }

    pub(crate) fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub(crate) fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim.get() {
            return Err(Error::input(format!(
                "point has {} coordinates, measure lives in dimension {}",
                p.dim(),
                self.dim.get()
            )));
        }
        Ok(())
    }
}
