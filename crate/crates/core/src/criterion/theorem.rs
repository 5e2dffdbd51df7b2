use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsh::{from_rational, positive_part_integral, riesz_lower_variation, DshFunction, RationalFunction};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::kernels::{constant_a, Dimension};
use crate::measure::{inf_potential_on_support, radial_counting, sup_integrated_counting, Measure, Region, SupReport};
use crate::nevanlinna::{classical_n, classical_t, difference_t};
use crate::point::Point;

use super::report::{inequality_verdict, margin, CheckKind, CheckReport, Sides, TightBound, Verdict};
use super::CheckOptions;

fn check_radii(r: f64, big_r: f64) -> Result<()> {
    if !(r > 0.0 && big_r > r && big_r.is_finite()) {
        return Err(Error::geometry(format!("need 0 < r < R, got r = {r}, R = {big_r}")));
    }
    Ok(())
}

fn check_supported_in(mu: &Measure, r: f64) -> Result<()> {
    let s = mu.support_radius();
    if s > r * (1.0 + 1e-12) {
        return Err(Error::geometry(format!("measure reaches radius {s}, outside the closed ball of radius {r}")));
    }
    Ok(())
}

/// Auxiliary radius of the sharper bound: geometric mean in the plane,
/// arithmetic mean in higher dimensions.
pub fn r_star(r: f64, big_r: f64, d: Dimension) -> f64 {
    if d == Dimension::PLANE {
        (r * big_r).sqrt()
    } else {
        0.5 * (r + big_r)
    }
}

/// Finiteness of `sup N_y(r0)` over the closed ball of radius `R`.
pub fn check_statement_i(mu: &Measure, r0: f64, big_r: f64, opts: &CheckOptions) -> Result<CheckReport> {
    if !(r0 > 0.0) {
        return Err(Error::geometry(format!("r0 must be positive, got {r0}")));
    }
    if !(big_r > mu.support_radius() && big_r.is_finite()) {
        return Err(Error::geometry(format!("R = {big_r} must exceed the support radius {}", mu.support_radius())));
    }
    let region = Region::ball(Point::origin(mu.dimension().get()), big_r);
    let sup = sup_integrated_counting(mu, &region, r0, &opts.grid, &opts.quad)?;
    Ok(sup_report("statement_i", sup))
}

fn sup_report(name: &str, sup: SupReport) -> CheckReport {
    let mut diagnostics = Vec::new();
    if sup.value.is_pos_inf() {
        diagnostics.push(format!("N is +inf at {:?}", sup.argmax));
    }
    CheckReport::finiteness(name, CheckKind::FiniteAbove, sup.value, sup.error, sup.converged, diagnostics)
        .with_grid(sup.resolution, Some(sup.argmax))
}

/// Lower boundedness of the potential on the support.
pub fn check_statement_iv(mu: &Measure, opts: &CheckOptions) -> Result<CheckReport> {
    let inf = inf_potential_on_support(mu, &opts.grid)?;
    let mut diagnostics = Vec::new();
    if inf.value.is_neg_inf() {
        diagnostics.push(format!("potential is -inf at {:?}", inf.argmax));
    }
    Ok(CheckReport::finiteness("statement_iv", CheckKind::FiniteBelow, inf.value, 0.0, true, diagnostics)
        .with_grid(inf.resolution, Some(inf.argmax)))
}

/// Finiteness of `sup N_y(r0)` over the support.
pub fn check_statement_v(mu: &Measure, r0: f64, opts: &CheckOptions) -> Result<CheckReport> {
    if !(r0 > 0.0) {
        return Err(Error::geometry(format!("r0 must be positive, got {r0}")));
    }
    let sup = sup_integrated_counting(mu, &Region::Support, r0, &opts.grid, &opts.quad)?;
    Ok(sup_report("statement_v", sup))
}

/// The measure-dependent factor of the integral bound:
/// `mu(closed ball(r)) max{1, r^(2-d)} + sup over the closed ball of N_y(r)`.
pub(crate) struct MeasureFactor {
    pub mass: f64,
    pub sup: SupReport,
    pub value: ExtReal,
    pub error: f64,
}

pub(crate) fn measure_factor(mu: &Measure, r: f64, sup_radius: f64, opts: &CheckOptions) -> Result<MeasureFactor> {
    let d = mu.dimension();
    let origin = Point::origin(d.get());
    let mass = radial_counting(mu, &origin, r, &opts.quad)?;
    let sup = sup_integrated_counting(mu, &Region::ball(origin, sup_radius), r, &opts.grid, &opts.quad)?;
    let weight = r.powf(2.0 - d.get() as f64).max(1.0);
    let m = mass.value.get();
    Ok(MeasureFactor {
        mass: m,
        value: ExtReal::from_f64(m * weight) + sup.value,
        error: mass.error * weight + sup.error,
        sup,
    })
}

/// `a * b` with `0 * inf = 0` for nonnegative factors.
fn product(a: ExtReal, b: ExtReal) -> ExtReal {
    if a == ExtReal::ZERO || b == ExtReal::ZERO {
        ExtReal::ZERO
    } else if a.is_finite() && b.is_finite() {
        ExtReal::from_f64(a.get() * b.get())
    } else {
        ExtReal::INFINITY
    }
}

/// Error of `c * a * b` from errors of `a` and `b`.
fn product_error(c: f64, a: ExtReal, ea: f64, b: ExtReal, eb: f64) -> f64 {
    match (a.finite(), b.finite()) {
        (Some(a), Some(b)) => c * (ea * b.abs() + eb * a.abs() + ea * eb),
        _ => 0.0,
    }
}

/// `int_{closed ball(r)} U^+ dmu <= A_d(r, R) T_U(r, R) (mu(r) max{1, r^(2-d)} + sup N_y(r))`.
///
/// With `opts.tight` the report also carries the sharper bound
/// `R*^(d-2) (R*+r)/(R*-r)^(d-1) T mu(r) + lower(R*) (mu(r)(k(R*+r)-k(r)) + sup N)`.
pub fn check_statement_ii(
    mu: &Measure,
    u: &DshFunction,
    r: f64,
    big_r: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    check_radii(r, big_r)?;
    check_supported_in(mu, r)?;
    let d = mu.dimension();
    if u.dimension() != d {
        return Err(Error::input("function and measure live in different dimensions"));
    }
    let lhs = positive_part_integral(u, mu, &opts.quad)?;
    let t = difference_t(u, r, big_r, &opts.quad)?;
    let factor = measure_factor(mu, r, r, opts)?;
    let a = constant_a(r, big_r, d)?;
    let rhs = product(ExtReal::from_f64(a), product(t.total, factor.value));
    let rhs_error = product_error(a, t.total, t.error, factor.value, factor.error);
    let mut diagnostics = lhs.diagnostics;
    diagnostics.push(format!("T_U = {}, sup N = {}", t.total, factor.sup.value));
    let sides = Sides {
        lhs: lhs.estimate.value,
        rhs,
        error: lhs.estimate.error + rhs_error,
        converged: lhs.estimate.converged && t.converged && factor.sup.converged,
    };
    let tight = if opts.tight {
        let rs = r_star(r, big_r, d);
        let lower = radial_counting(&riesz_lower_variation(u), &Point::origin(d.get()), rs, &opts.quad)?;
        let dd = d.get() as i32;
        let first = rs.powi(dd - 2) * (rs + r) / (rs - r).powi(dd - 1) * factor.mass;
        let inner = ExtReal::from_f64(factor.mass * (d.kernel(rs + r) - d.kernel(r))) + factor.sup.value;
        let rhs_t = product(t.total, ExtReal::from_f64(first)) + product(lower.value, inner);
        let err_t = product_error(first, t.total, t.error, ExtReal::from_f64(1.0), 0.0)
            + product_error(1.0, lower.value, 0.0, inner, factor.sup.error);
        let s = Sides { rhs: rhs_t, error: lhs.estimate.error + err_t, ..sides };
        let mut notes = Vec::new();
        let verdict = inequality_verdict(&s, opts.tolerance, &mut notes);
        diagnostics.extend(notes.into_iter().map(|n| format!("tight bound: {n}")));
        Some(TightBound { r_star: rs, rhs: rhs_t, margin: margin(s.lhs, rhs_t), verdict })
    } else {
        None
    };
    let mut report = CheckReport::inequality("statement_ii", sides, opts.tolerance, diagnostics)
        .with_grid(factor.sup.resolution, Some(factor.sup.argmax));
    report.tight = tight;
    Ok(report)
}

/// Witnesses `k(R+r) - k(|x - y|)` for `y` on a lattice of the closed ball of
/// radius `r` (`per_axis` intervals) and at `random` points drawn with `seed`.
pub fn witness_family(
    d: Dimension,
    r: f64,
    big_r: f64,
    per_axis: usize,
    random: usize,
    seed: u64,
) -> Result<Vec<DshFunction>> {
    check_radii(r, big_r)?;
    let mut out = Vec::new();
    let side = per_axis + 1;
    let h = 2.0 * r / per_axis.max(1) as f64;
    for mut idx in 0..side.pow(d.get() as u32) {
        let mut c = Vec::with_capacity(d.get());
        for _ in 0..d.get() {
            c.push(-r + h * (idx % side) as f64);
            idx /= side;
        }
        let y = Point::from(c);
        if y.norm() <= r * (1.0 + 1e-12) {
            out.push(DshFunction::witness(y, r, big_r)?);
        }
    }
    for y in random_points_in_ball(d, r, random, seed) {
        out.push(DshFunction::witness(y, r, big_r)?);
    }
    Ok(out)
}

/// Witnesses centred at the atoms of `mu` in the closed ball of radius `r`:
/// each integrates to `+inf` against its atom.
pub fn atom_witnesses(mu: &Measure, r: f64, big_r: f64) -> Result<Vec<DshFunction>> {
    check_radii(r, big_r)?;
    mu.atoms().iter().filter(|a| a.point.norm() <= r).map(|a| DshFunction::witness(a.point.clone(), r, big_r)).collect()
}

/// Search for a violation of the uniform bound
/// `int U^+ dmu <= T_cap * A_d (mu(r) max{1, r^(2-d)} + sup N_y(r))` over a
/// family rescaled to `T_U(r, R) = T_cap`. Holding is evidence, not proof.
pub fn falsify_statement_iii(
    mu: &Measure,
    family: &[DshFunction],
    r: f64,
    big_r: f64,
    t_cap: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    check_radii(r, big_r)?;
    check_supported_in(mu, r)?;
    if family.is_empty() {
        return Err(Error::input("family must not be empty"));
    }
    if !(t_cap > 0.0 && t_cap.is_finite()) {
        return Err(Error::input(format!("T cap must be positive, got {t_cap}")));
    }
    let d = mu.dimension();
    let mut best: Option<(usize, ExtReal, f64)> = None;
    let mut converged = true;
    let mut diagnostics = Vec::new();
    for (i, u) in family.iter().enumerate() {
        let t = difference_t(u, r, big_r, &opts.quad)?;
        converged &= t.converged;
        let scaled = match t.total.finite() {
            Some(v) if v > 0.0 => u.scaled(t_cap / v)?,
            Some(_) => u.clone(),
            None => {
                diagnostics.push(format!("member {i} has infinite characteristic; skipped"));
                continue;
            }
        };
        let v = positive_part_integral(&scaled, mu, &opts.quad)?;
        converged &= v.estimate.converged;
        if best.as_ref().is_none_or(|b| v.estimate.value > b.1) {
            best = Some((i, v.estimate.value, v.estimate.error));
        }
    }
    let (index, lhs, lhs_err) = best.ok_or_else(|| Error::input("no family member has finite characteristic"))?;
    diagnostics.push(format!("largest integral from member {index} of {}", family.len()));
    let factor = measure_factor(mu, r, r, opts)?;
    let a = constant_a(r, big_r, d)?;
    let rhs = product(ExtReal::from_f64(a * t_cap), factor.value);
    let sides =
        Sides { lhs, rhs, error: lhs_err + a * t_cap * factor.error, converged: converged && factor.sup.converged };
    let mut report = CheckReport::inequality("statement_iii", sides, opts.tolerance, diagnostics)
        .with_grid(factor.sup.resolution, Some(factor.sup.argmax));
    // the supremum itself must be finite, whatever the bound says
    if lhs.is_pos_inf() {
        report.verdict = Verdict::Fails;
        report.diagnostics.push(format!("member {index} has an infinite integral"));
    }
    Ok(report)
}

/// `int ln+|f| dmu <= 5 (R+r)/(R-r) (T(R,f) - N(r,f)) (mu(r) + sup over the
/// closed disk of radius R of N_z(r))`, with the characteristic cross-checked
/// against the charge-model form.
pub fn check_corollary(
    f: &RationalFunction,
    mu: &Measure,
    r: f64,
    big_r: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    check_radii(r, big_r)?;
    if mu.dimension() != Dimension::PLANE {
        return Err(Error::UnsupportedDimension(mu.dimension().get()));
    }
    check_supported_in(mu, r)?;
    let u = from_rational(f)?;
    let lhs = positive_part_integral(&u, mu, &opts.quad)?;
    let classical = classical_t(f, big_r, &opts.quad)?;
    let t = classical.total.get() - classical_n(f, r)?;
    let mut diagnostics = lhs.diagnostics;
    let cross = difference_t(&u, r, big_r, &opts.quad)?;
    let gap = (cross.total.get() - t).abs();
    if gap > 1e-6 * (1.0 + t.abs()) {
        diagnostics.push(format!("characteristic mismatch: T - N = {t}, charge form = {}", cross.total));
    } else {
        diagnostics.push(format!("T - N = {t}, charge form agrees to {gap:.1e}"));
    }
    let factor = measure_factor(mu, r, big_r, opts)?;
    let c = 5.0 * (big_r + r) / (big_r - r);
    let t_ext = ExtReal::from_f64(t.max(0.0));
    let rhs = product(ExtReal::from_f64(c), product(t_ext, factor.value));
    let sides = Sides {
        lhs: lhs.estimate.value,
        rhs,
        error: lhs.estimate.error + product_error(c, t_ext, classical.error, factor.value, factor.error),
        converged: lhs.estimate.converged && classical.converged && factor.sup.converged,
    };
    Ok(CheckReport::inequality("corollary", sides, opts.tolerance, diagnostics)
        .with_grid(factor.sup.resolution, Some(factor.sup.argmax)))
}

/// Random points in the closed ball of radius `r`, reproducible from `seed`.
pub fn random_points_in_ball(d: Dimension, r: f64, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c: Vec<f64> = (0..d.get()).map(|_| rng.random_range(-r..=r)).collect();
        let p = Point::from(c);
        if p.norm() <= r {
            out.push(p);
        }
    }
    out
}
