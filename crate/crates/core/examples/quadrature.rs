//! Adaptive quadrature with endpoint singularities, circle and sphere means,
//! and Riemann-Stieltjes sums against counting functions.

use nevkit::dsh::DshFunction;
use nevkit::kernels::Dimension;
use nevkit::point::Point;
use nevkit::quadrature::{integrate_1d, sphere_mean, stieltjes_against_jumps, CountingFunction, FnEval, QuadSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = QuadSpec::default();
    let q = integrate_1d(|t| 1.0 / t.sqrt(), 0.0, 1.0, &spec);
    println!("int_0^1 t^(-1/2) dt = {:.12} (error {:.1e}, converged {})", q.value, q.error, q.converged);
    let q = integrate_1d(f64::ln, 0.0, 1.0, &spec);
    println!("int_0^1 ln t dt = {:.12}", q.value);

    let smooth = FnEval::new(Dimension::PLANE, |x: &Point| x[0] * x[0]);
    println!("mean of x^2 over the circle of radius 2: {:.12}", sphere_mean(&smooth, 2.0, &spec)?.value);
    let log = DshFunction::kernel_at(Point::xy(0.4, 0.1), 1.0)?;
    println!("mean of ln|x - a| over |x| = 1, |a| < 1: {:.12} (ln 1 = 0)", sphere_mean(&log, 1.0, &spec)?.value);
    let newton = DshFunction::kernel_at(Point::xyz(0.0, 0.0, 3.0), 1.0)?;
    println!("mean of -1/|x - a| over |x| = 1, |a| = 3: {:.12} (-1/3)", sphere_mean(&newton, 1.0, &spec)?.value);

    let h = CountingFunction::from_jumps(0.0, [(0.5, 1.0), (1.0, 2.0)])?;
    let s = stieltjes_against_jumps(|t| 2f64.ln() - t.ln(), &h, 0.0, 2.0, &spec);
    println!("int_0^2 (ln 2 - ln t) dh(t) for jumps 1 at 0.5 and 2 at 1: {:.12}", s.value);
    let ramp = CountingFunction::from_jumps(0.0, [])?.with_density(|_| 1.0, vec![]);
    println!(
        "int_0^1 ln t dt as a Stieltjes integral: {:.12}",
        stieltjes_against_jumps(f64::ln, &ramp, 0.0, 1.0, &spec).value
    );
    Ok(())
}
