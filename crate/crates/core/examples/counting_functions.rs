//! Counting functions of a measure: ball masses, integrated counting, the
//! difference counting function and the supremum over a ball.

use nevkit::kernels::Dimension;
use nevkit::measure::{
    difference_counting, integrated_counting, radial_counting, sup_integrated_counting, Grid, Measure, RadialProfile,
    Region,
};
use nevkit::point::Point;
use nevkit::quadrature::QuadSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = QuadSpec::default();
    let mu = Measure::zero(Dimension::PLANE)
        .with_radial(Point::xy(0.2, 0.0), 0.6, 1.0, RadialProfile::Power(0.0))?
        .with_sphere(Point::xy(-0.3, 0.3), 0.25, 0.5)?
        .with_atom(Point::xy(0.5, -0.5), 0.25)?;
    let y = Point::xy(0.1, 0.1);
    for t in [0.1, 0.3, 0.6, 1.0, 2.0] {
        println!("mass of the closed disk of radius {t} about y: {:.9}", radial_counting(&mu, &y, t, &spec)?.value);
    }
    println!("N_y(1) = {:.9}", integrated_counting(&mu, &y, 1.0, &spec)?.value);
    println!("N(0.5, 2) about the origin = {:.9}", difference_counting(&mu, 0.5, 2.0, &spec)?.value);

    let smooth = Measure::zero(Dimension::PLANE)
        .with_radial(Point::xy(0.2, 0.0), 0.6, 1.0, RadialProfile::Power(0.0))?
        .with_sphere(Point::xy(-0.3, 0.3), 0.25, 0.5)?;
    for n in [8, 16, 32] {
        let sup = sup_integrated_counting(&smooth, &Region::ball(Point::xy(0.0, 0.0), 1.0), 1.0, &Grid::new(n), &spec)?;
        println!(
            "grid {n:>2}: sup N_y(1) over the unit disk = {:.9} at {:?} ({} evaluations)",
            sup.value, sup.argmax, sup.evaluations
        );
    }
    let sup = sup_integrated_counting(&mu, &Region::Support, 1.0, &Grid::new(8), &spec)?;
    println!("with the atom the supremum is {}", sup.value);
    Ok(())
}
