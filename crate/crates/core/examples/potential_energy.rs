//! Logarithmic and Newtonian potentials, their infimum on the support, and
//! energies.

use nevkit::kernels::Dimension;
use nevkit::measure::{energy, inf_potential_on_support, potential, Grid, Measure, RadialProfile};
use nevkit::point::Point;
use nevkit::quadrature::QuadSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = QuadSpec::default();
    let o = Point::xy(0.0, 0.0);
    let circle = Measure::uniform_sphere(o.clone(), 1.0, 1.0)?;
    let disk = Measure::uniform_ball(o.clone(), 1.0, 1.0)?;
    for x in [o.clone(), Point::xy(0.5, 0.0), Point::xy(2.0, 0.0)] {
        println!(
            "at {x:?}: circle potential {:.9}, disk potential {:.9}",
            potential(&circle, &x)?,
            potential(&disk, &x)?
        );
    }
    println!("energy of the unit circle (equilibrium measure, ln capacity 0): {:.9}", energy(&circle, &spec)?.value);
    println!("energy of the normalised area of the unit disk (-1/4): {:.9}", energy(&disk, &spec)?.value);
    let inf = inf_potential_on_support(&disk, &Grid::default())?;
    println!("inf of the disk potential on the disk: {:.9} at {:?}", inf.value, inf.argmax);

    let ball = Measure::uniform_ball(Point::xyz(0.0, 0.0, 0.0), 1.0, 1.0)?;
    println!(
        "Newtonian potential of the unit ball at its centre (-3/2): {:.9}",
        potential(&ball, &Point::xyz(0.0, 0.0, 0.0))?
    );
    let singular =
        Measure::zero(Dimension::SPACE).with_radial(Point::xyz(0.0, 0.0, 0.0), 1.0, 1.0, RadialProfile::Power(-2.0))?;
    println!(
        "density |x|^-2 in space has potential {} at the centre",
        potential(&singular, &Point::xyz(0.0, 0.0, 0.0))?
    );
    let atom = Measure::point_mass(o, 1.0)?;
    println!("a point mass has energy {}", energy(&atom, &spec)?.value);
    Ok(())
}
