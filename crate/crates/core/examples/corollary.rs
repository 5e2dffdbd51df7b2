//! The bound on the integral of ln+|f| over the normalised area measure of
//! the unit disk for a rational f, printed as a JSON report.

use nevkit::criterion::{check_corollary, CheckOptions};
use nevkit::dsh::{Complex, RationalFunction, Root};
use nevkit::measure::Measure;
use nevkit::point::Point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let disk = Measure::uniform_ball(Point::xy(0.0, 0.0), 1.0, 1.0)?;
    for scale in [1.0, 8.0] {
        let f = RationalFunction::new(
            vec![Root::new(0.5, 0.0, 1)],
            vec![Root::new(2.0, 0.0, 2)],
            Complex::new(scale, 0.0),
        )?;
        let report = check_corollary(&f, &disk, 1.0, 2.0, &CheckOptions::default())?;
        println!("{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(())
}
