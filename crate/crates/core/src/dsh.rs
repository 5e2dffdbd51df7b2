//! Differences of subharmonic functions with finitely many point charges:
//! `U(x) = sum_i c_i k(|x - y_i|) + h(x)` with `h` a harmonic polynomial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::kernels::Dimension;
use crate::measure::{integrate, Measure};
use crate::point::Point;
use crate::quadrature::{Estimate, Evaluate, QuadSpec};

/// A point charge `coefficient * k(|x - location|)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Charge {
    pub location: Point,
    pub coefficient: f64,
}

/// Harmonic basis functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "snake_case")]
pub enum Basis {
    Constant,
    /// The coordinate `x_axis`.
    Linear {
        axis: usize,
    },
    /// `Re z^k`, plane only.
    RePow {
        k: u32,
    },
    /// `Im z^k`, plane only.
    ImPow {
        k: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicTerm {
    #[serde(flatten)]
    pub basis: Basis,
    pub coef: f64,
}

impl HarmonicTerm {
    fn eval(&self, x: &Point) -> f64 {
        let v = match self.basis {
            Basis::Constant => 1.0,
            Basis::Linear { axis } => x[axis],
            Basis::RePow { k } | Basis::ImPow { k } => {
                let rho = x.norm().powi(k as i32);
                let theta = x[1].atan2(x[0]) * k as f64;
                if matches!(self.basis, Basis::RePow { .. }) {
                    rho * theta.cos()
                } else {
                    rho * theta.sin()
                }
            }
        };
        self.coef * v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DshFunction {
    dim: Dimension,
    charges: Vec<Charge>,
    harmonic: Vec<HarmonicTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DshRepr {
    dimension: Dimension,
    #[serde(default)]
    charges: Vec<Charge>,
    #[serde(default)]
    harmonic: Vec<HarmonicTerm>,
}

impl DshFunction {
    /// Coincident charges are merged and zero charges dropped.
    pub fn new(dim: Dimension, charges: Vec<Charge>, harmonic: Vec<HarmonicTerm>) -> Result<Self> {
        let mut merged: Vec<Charge> = Vec::new();
        for (i, c) in charges.into_iter().enumerate() {
            if c.location.dim() != dim.get() || !c.location.is_finite() {
                return Err(Error::parse(
                    format!("charges[{i}].location"),
                    format!("need {} finite coordinates", dim.get()),
                ));
            }
            if !c.coefficient.is_finite() {
                return Err(Error::parse(format!("charges[{i}].coefficient"), "must be finite"));
            }
            match merged.iter_mut().find(|m| m.location == c.location) {
                Some(m) => m.coefficient += c.coefficient,
                None => merged.push(c),
            }
        }
        merged.retain(|c| c.coefficient != 0.0);
        for (i, t) in harmonic.iter().enumerate() {
            if !t.coef.is_finite() {
                return Err(Error::parse(format!("harmonic[{i}].coef"), "must be finite"));
            }
            match t.basis {
                Basis::Linear { axis } if axis >= dim.get() => {
                    return Err(Error::parse(
                        format!("harmonic[{i}].axis"),
                        format!("axis {axis} out of range for dimension {}", dim.get()),
                    ))
                }
                Basis::RePow { .. } | Basis::ImPow { .. } if dim != Dimension::PLANE => {
                    return Err(Error::parse(format!("harmonic[{i}].basis"), "powers of z need dimension 2"))
                }
                _ => {}
            }
        }
        Ok(DshFunction { dim, charges: merged, harmonic })
    }

    pub fn constant(dim: Dimension, c: f64) -> Self {
        let harmonic = if c == 0.0 { Vec::new() } else { vec![HarmonicTerm { basis: Basis::Constant, coef: c }] };
        DshFunction { dim, charges: Vec::new(), harmonic }
    }

    /// `coefficient * k(|x - y|)`.
    pub fn kernel_at(y: Point, coefficient: f64) -> Result<Self> {
        let dim = Dimension::new(y.dim())?;
        DshFunction::new(dim, vec![Charge { location: y, coefficient }], Vec::new())
    }

    /// `k(R + r) - k(|x - y|)`: nonnegative on the closed ball of radius
    /// `R + r` about `y`, with a unit negative charge at `y`.
    pub fn witness(y: Point, r: f64, big_r: f64) -> Result<Self> {
        let dim = Dimension::new(y.dim())?;
        let c = dim.kernel(big_r + r);
        DshFunction::new(
            dim,
            vec![Charge { location: y, coefficient: -1.0 }],
            vec![HarmonicTerm { basis: Basis::Constant, coef: c }],
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let repr: DshRepr = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))?;
        DshFunction::new(repr.dimension, repr.charges, repr.harmonic)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let repr: DshRepr = serde_path_to_error::deserialize(value)
            .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))?;
        DshFunction::new(repr.dimension, repr.charges, repr.harmonic)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DshRepr {
            dimension: self.dim,
            charges: self.charges.clone(),
            harmonic: self.harmonic.clone(),
        })
        .expect("plain data serialises")
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    pub fn charges(&self) -> &[Charge] {
        &self.charges
    }

    pub fn harmonic(&self) -> &[HarmonicTerm] {
        &self.harmonic
    }

    /// `U(x)`; `-inf` at positive charges and `+inf` at negative ones.
    pub fn evaluate(&self, x: &Point) -> Result<ExtReal> {
        if x.dim() != self.dim.get() {
            return Err(Error::input(format!(
                "point has {} coordinates, function lives in dimension {}",
                x.dim(),
                self.dim.get()
            )));
        }
        Ok(ExtReal::from_f64(self.value(x)))
    }

    fn value(&self, x: &Point) -> f64 {
        let mut total = 0.0;
        for c in &self.charges {
            let t = c.location.dist(x);
            if t == 0.0 {
                return if c.coefficient > 0.0 { f64::NEG_INFINITY } else { f64::INFINITY };
            }
            total += c.coefficient * self.dim.kernel(t);
        }
        total + self.harmonic.iter().map(|h| h.eval(x)).sum::<f64>()
    }

    /// `lambda * U` for `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::input(format!("scale must be positive, got {lambda}")));
        }
        Ok(DshFunction {
            dim: self.dim,
            charges: self
                .charges
                .iter()
                .map(|c| Charge { location: c.location.clone(), coefficient: lambda * c.coefficient })
                .collect(),
            harmonic: self.harmonic.iter().map(|h| HarmonicTerm { basis: h.basis, coef: lambda * h.coef }).collect(),
        })
    }

    /// The function `max(U, 0)`, for quadrature.
    pub fn positive_part(&self) -> PositivePart<'_> {
        PositivePart(self)
    }
}

impl Evaluate for DshFunction {
    fn dimension(&self) -> Dimension {
        self.dim
    }

    fn eval(&self, x: &Point) -> f64 {
        self.value(x)
    }

    fn singular_points(&self) -> Vec<Point> {
        self.charges.iter().map(|c| c.location.clone()).collect()
    }
}

/// `U^+` of a [`DshFunction`].
#[derive(Clone, Copy, Debug)]
pub struct PositivePart<'a>(&'a DshFunction);

impl Evaluate for PositivePart<'_> {
    fn dimension(&self) -> Dimension {
        self.0.dim
    }

    fn eval(&self, x: &Point) -> f64 {
        self.0.value(x).max(0.0)
    }

    fn singular_points(&self) -> Vec<Point> {
        self.0.singular_points()
    }
}

/// An integral together with notes about how infinities were resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnotatedIntegral {
    pub estimate: Estimate,
    pub diagnostics: Vec<String>,
}

/// `int U^+ dmu`. An atom of `mu` at a negative charge makes it `+inf`; at a
/// positive charge it contributes nothing.
pub fn positive_part_integral(u: &DshFunction, mu: &Measure, spec: &QuadSpec) -> Result<AnnotatedIntegral> {
    let mut diagnostics = Vec::new();
    for a in mu.atoms() {
        if let Some(c) = u.charges.iter().find(|c| c.location == a.point) {
            if c.coefficient < 0.0 {
                diagnostics.push(format!("atom of mass {} at {:?} sits where U = +inf", a.mass, a.point));
            } else {
                diagnostics.push(format!("atom at {:?} sits where U = -inf; U^+ = 0 there", a.point));
            }
        }
    }
    let estimate = integrate(mu, &u.positive_part(), spec)?;
    Ok(AnnotatedIntegral { estimate, diagnostics })
}

/// `sum over negative charges of |c_i| delta_{y_i}`.
pub fn riesz_lower_variation(u: &DshFunction) -> Measure {
    u.charges.iter().filter(|c| c.coefficient < 0.0).fold(Measure::zero(u.dim), |m, c| {
        m.with_atom(c.location.clone(), -c.coefficient).expect("charges are validated")
    })
}

/// A complex number in JSON as `{"re": .., "im": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Complex {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl Complex {
    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn point(self) -> Point {
        Point::xy(self.re, self.im)
    }
}

/// A zero or pole with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Root {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

impl Root {
    pub fn new(re: f64, im: f64, mult: u32) -> Self {
        Root { re, im, mult }
    }

    pub fn at(self) -> Complex {
        Complex::new(self.re, self.im)
    }
}

/// `scale * prod (z - a_i)^m_i / prod (z - b_j)^n_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalFunction {
    #[serde(default)]
    pub zeros: Vec<Root>,
    #[serde(default)]
    pub poles: Vec<Root>,
    #[serde(default = "unit")]
    pub scale: Complex,
}

fn unit() -> Complex {
    Complex::new(1.0, 0.0)
}

impl RationalFunction {
    pub fn new(zeros: Vec<Root>, poles: Vec<Root>, scale: Complex) -> Result<Self> {
        let f = RationalFunction { zeros, poles, scale };
        f.validate()?;
        Ok(f)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let f: RationalFunction = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))?;
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, roots) in [("zeros", &self.zeros), ("poles", &self.poles)] {
            for (i, r) in roots.iter().enumerate() {
                if !(r.re.is_finite() && r.im.is_finite()) {
                    return Err(Error::parse(format!("{name}[{i}]"), "coordinates must be finite"));
                }
                if r.mult == 0 {
                    return Err(Error::parse(format!("{name}[{i}].mult"), "multiplicity must be >= 1"));
                }
            }
        }
        let s = self.scale;
        if !(s.re.is_finite() && s.im.is_finite()) || s.abs() == 0.0 {
            return Err(Error::parse("scale", "must be finite and nonzero"));
        }
        for z in &self.zeros {
            if self.poles.iter().any(|p| p.re == z.re && p.im == z.im) {
                return Err(Error::input(format!("{} + {}i is both a zero and a pole", z.re, z.im)));
            }
        }
        Ok(())
    }

    /// `ln |f(z)|`, summed factor by factor.
    pub fn ln_abs(&self, z: Complex) -> f64 {
        let term = |r: &Root| r.mult as f64 * (z.re - r.re).hypot(z.im - r.im).ln();
        let zeros: f64 = self.zeros.iter().map(term).sum();
        let poles: f64 = self.poles.iter().map(term).sum();
        if zeros == f64::NEG_INFINITY && poles == f64::NEG_INFINITY {
            return f64::NAN;
        }
        self.scale.abs().ln() + zeros - poles
    }

    /// The product `f g`.
    pub fn product(&self, other: &RationalFunction) -> Result<Self> {
        let (a, b) = (self.scale, other.scale);
        RationalFunction::new(
            self.zeros.iter().chain(&other.zeros).copied().collect(),
            self.poles.iter().chain(&other.poles).copied().collect(),
            Complex::new(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re),
        )
    }
}

/// `ln |f|` as a charge model: `+m` at zeros, `-m` at poles and the constant
/// `ln |scale|`.
pub fn from_rational(f: &RationalFunction) -> Result<DshFunction> {
    f.validate()?;
    let charges = f
        .zeros
        .iter()
        .map(|z| (z, 1.0))
        .chain(f.poles.iter().map(|p| (p, -1.0)))
        .map(|(r, sign)| Charge { location: r.at().point(), coefficient: sign * r.mult as f64 })
        .collect();
    let c = f.scale.abs().ln();
    let harmonic = if c == 0.0 { Vec::new() } else { vec![HarmonicTerm { basis: Basis::Constant, coef: c }] };
    DshFunction::new(Dimension::PLANE, charges, harmonic)
}
