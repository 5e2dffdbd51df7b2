//! Fundamental kernels, sphere areas, the Poisson kernel and the Green
//! function of a ball, and the constant of the main bound.

use nevkit::kernels::{constant_a, green_ball, hat_d, kappa, poisson_kernel, sphere_area, Dimension};
use nevkit::point::Point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in 2..=4 {
        let dim = Dimension::new(d)?;
        println!(
            "d = {d}: k(0.5) = {:.6}, hat_d = {}, sphere area = {:.6}, A(1, 2) = {:.6}",
            kappa(0.5, dim)?,
            hat_d(dim),
            sphere_area(dim),
            constant_a(1.0, 2.0, dim)?
        );
    }
    let x = Point::xy(0.3, -0.2);
    let y = Point::xy(0.0, 2.0);
    println!(
        "Poisson kernel of the circle |y| = 2 at x = {x:?}: {:.6}",
        poisson_kernel(&x, &y, 2.0, Dimension::PLANE)?
    );
    let z = Point::xy(-0.5, 0.4);
    println!("Green function of D(2) at ({x:?}, {z:?}): {}", green_ball(&x, &z, 2.0, Dimension::PLANE)?);
    println!("Green function on the boundary: {}", green_ball(&x, &y, 2.0, Dimension::PLANE)?);
    Ok(())
}
