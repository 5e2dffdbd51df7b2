//! The classical Nevanlinna characteristic of a rational function and the
//! difference characteristic of ln|f|: T(R, f) - N(r, f) equals T_ln|f|(r, R).

use nevkit::dsh::{from_rational, Complex, RationalFunction, Root};
use nevkit::nevanlinna::{classical_n, classical_t, difference_t};
use nevkit::quadrature::QuadSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = QuadSpec::default();
    let f = RationalFunction::new(
        vec![Root::new(0.5, 0.0, 1), Root::new(-1.5, 1.0, 2)],
        vec![Root::new(0.0, 0.7, 1), Root::new(1.8, -0.3, 3)],
        Complex::new(2.0, -1.0),
    )?;
    let u = from_rational(&f)?;
    for (r, big_r) in [(0.5, 1.0), (1.0, 2.0), (1.0, 2.5), (2.0, 3.0)] {
        let t = classical_t(&f, big_r, &spec)?;
        let n = classical_n(&f, r)?;
        let d = difference_t(&u, r, big_r, &spec)?;
        println!(
            "r = {r}, R = {big_r}: T(R) = {:.10} (m = {:.10}), N(r) = {n:.10}, T - N = {:.10}, T_ln|f| = {:.10}",
            t.total,
            t.proximity,
            t.total.get() - n,
            d.total
        );
    }
    Ok(())
}
