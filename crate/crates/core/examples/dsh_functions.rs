//! Differences of subharmonic functions as charges plus harmonic terms,
//! built from JSON or from a rational function.

use nevkit::dsh::{from_rational, positive_part_integral, riesz_lower_variation, DshFunction, RationalFunction};
use nevkit::measure::Measure;
use nevkit::point::Point;
use nevkit::quadrature::QuadSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u = DshFunction::from_json(
        r#"{
            "dimension": 2,
            "charges": [{"location": [0.5, 0.0], "coefficient": 1.0}, {"location": [2.0, 0.0], "coefficient": -2.0}],
            "harmonic": [{"basis": "constant", "coef": 0.3}, {"basis": "re_pow", "k": 2, "coef": 0.1}]
        }"#,
    )?;
    for x in [Point::xy(0.0, 0.0), Point::xy(0.5, 0.0), Point::xy(2.0, 0.0)] {
        println!("U({x:?}) = {}", u.evaluate(&x)?);
    }

    let f = RationalFunction::from_json(
        r#"{"zeros": [{"re": 0.5}], "poles": [{"re": 2.0, "mult": 2}], "scale": {"re": 8.0}}"#,
    )?;
    let lf = from_rational(&f)?;
    let z = Point::xy(0.1, 0.2);
    println!("ln|f| at {z:?}: {} (direct: {})", lf.evaluate(&z)?, f.ln_abs(nevkit::dsh::Complex::new(0.1, 0.2)));
    println!("charges of ln|f|: {}", serde_json::to_string(lf.charges())?);
    let lower = riesz_lower_variation(&lf);
    println!("lower Riesz variation: {} with total mass {}", lower.to_json(), lower.total_mass());

    let disk = Measure::uniform_ball(Point::xy(0.0, 0.0), 1.0, 1.0)?;
    let i = positive_part_integral(&lf, &disk, &QuadSpec::default())?;
    println!("int ln+|f| over the unit disk: {:.9} (error {:.1e})", i.estimate.value, i.estimate.error);
    println!("lambda-scaled function as JSON: {}", u.scaled(2.0)?.to_json());
    Ok(())
}
