//! Nevanlinna characteristics of rational functions and their analogue for
//! charge models.

use serde::Serialize;

use crate::dsh::{riesz_lower_variation, DshFunction, RationalFunction};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::kernels::Dimension;
use crate::measure::difference_counting;
use crate::point::Point;
use crate::quadrature::{sphere_mean, FnEval, QuadSpec};

/// Proximity plus counting term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Characteristic {
    pub proximity: f64,
    pub counting: ExtReal,
    pub total: ExtReal,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub error: f64,
    pub converged: bool,
}

fn check_radius(r: f64, what: &str) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::geometry(format!("{what} must be positive, got {r}")));
    }
    Ok(())
}

/// Integrated pole counting `int_0^r (n(t) - n(0)) / t dt + n(0) ln r`.
pub fn classical_n(f: &RationalFunction, r: f64) -> Result<f64> {
    check_radius(r, "r")?;
    let mut total = 0.0;
    for p in &f.poles {
        let rho = p.at().abs();
        let m = p.mult as f64;
        if rho == 0.0 {
            total += m * r.ln();
        } else if rho <= r {
            total += m * (r / rho).ln();
        }
    }
    Ok(total)
}

/// `T(R, f)`: circle mean of `ln+ |f|` plus pole counting up to `R`.
pub fn classical_t(f: &RationalFunction, big_r: f64, spec: &QuadSpec) -> Result<Characteristic> {
    check_radius(big_r, "R")?;
    f.validate()?;
    let roots: Vec<Point> = f.zeros.iter().chain(&f.poles).map(|z| z.at().point()).collect();
    let g = FnEval::new(Dimension::PLANE, |x: &Point| f.ln_abs(crate::dsh::Complex::new(x[0], x[1])).max(0.0))
        .with_singular_points(roots);
    let m = sphere_mean(&g, big_r, spec)?;
    let n = classical_n(f, big_r)?;
    Ok(Characteristic {
        proximity: m.value,
        counting: ExtReal::from_f64(n),
        total: ExtReal::from_f64(m.value + n),
        r: 0.0,
        big_r,
        error: m.error,
        converged: m.converged,
    })
}

/// `C_{U+}(R) + N_{lower variation}(r, R)`; `+inf` when `r = 0` and a
/// negative charge sits at the origin.
pub fn difference_t(u: &DshFunction, r: f64, big_r: f64, spec: &QuadSpec) -> Result<Characteristic> {
    u.dimension().require_quadrature()?;
    if !(r >= 0.0 && big_r > r && big_r.is_finite()) {
        return Err(Error::geometry(format!("need 0 <= r < R, got r = {r}, R = {big_r}")));
    }
    let m = sphere_mean(&u.positive_part(), big_r, spec)?;
    let n = difference_counting(&riesz_lower_variation(u), r, big_r, spec)?;
    let proximity = ExtReal::new(m.value).unwrap_or(ExtReal::INFINITY);
    Ok(Characteristic {
        proximity: m.value,
        counting: n.value,
        total: proximity + n.value,
        r,
        big_r,
        error: m.error + n.error,
        converged: m.converged && n.converged,
    })
}
