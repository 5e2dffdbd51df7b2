//! The Poisson-Jensen representation in a ball and the kernel bounds used
//! in the main estimate.

use nevkit::criterion::{green_bound, poisson_jensen_rhs, poisson_kernel_bound, verify_poisson_jensen, CheckOptions};
use nevkit::dsh::{Basis, Charge, DshFunction, HarmonicTerm};
use nevkit::kernels::{green_ball, Dimension};
use nevkit::point::Point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CheckOptions::default();
    let u = DshFunction::new(
        Dimension::PLANE,
        vec![
            Charge { location: Point::xy(0.4, -0.2), coefficient: 1.0 },
            Charge { location: Point::xy(-0.1, 0.5), coefficient: -0.5 },
            Charge { location: Point::xy(2.5, 0.0), coefficient: 2.0 },
        ],
        vec![HarmonicTerm { basis: Basis::Linear { axis: 1 }, coef: 0.3 }],
    )?;
    for x in [Point::xy(0.0, 0.0), Point::xy(0.6, 0.3), Point::xy(-0.7, -0.2)] {
        let rhs = poisson_jensen_rhs(&u, &x, 1.0, &opts)?;
        let rep = verify_poisson_jensen(&u, &x, 1.0, &opts)?;
        println!("x = {x:?}: U(x) = {}, representation = {:.12}, residual {:.1e}", rep.lhs, rhs.value, rep.residual);
    }

    let space = DshFunction::kernel_at(Point::xyz(0.2, 0.1, -0.3), 1.0)?;
    let rep = verify_poisson_jensen(&space, &Point::xyz(-0.3, 0.2, 0.1), 1.0, &opts)?;
    println!("Newton kernel in the unit ball: residual {:.1e} ({})", rep.residual, rep.verdict);

    for d in [Dimension::PLANE, Dimension::SPACE] {
        println!(
            "Poisson kernel bound for |x| <= 1 on |y| = 2 in dimension {}: {:.6}",
            d.get(),
            poisson_kernel_bound(1.0, 2.0, d)
        );
    }
    let (x, y) = (Point::xy(0.5, 0.5), Point::xy(-1.0, 0.8));
    println!(
        "Green function {} <= bound {}",
        green_ball(&x, &y, 2.0, Dimension::PLANE)?,
        green_bound(&x, &y, 1.0, 2.0, Dimension::PLANE)
    );
    Ok(())
}
