//! The five equivalent conditions on a measure, checked on an admissible
//! measure and on an atomic one, with the sharper intermediate bound.

use nevkit::criterion::{
    atom_witnesses, check_statement_i, check_statement_ii, check_statement_iv, check_statement_v,
    falsify_statement_iii, witness_family, CheckOptions,
};
use nevkit::dsh::DshFunction;
use nevkit::kernels::Dimension;
use nevkit::measure::Measure;
use nevkit::point::Point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CheckOptions { tight: true, ..CheckOptions::default() };
    let (r, big_r) = (1.0, 2.0);
    let smooth = Measure::uniform_ball(Point::xy(0.0, 0.0), 1.0, 1.0)?;
    let atomic = Measure::point_mass(Point::xy(0.3, 0.1), 1.0)?;
    for (name, mu) in [("area measure", &smooth), ("point mass", &atomic)] {
        println!("{name}:");
        println!("  I   {}", check_statement_i(mu, r, big_r, &opts)?.verdict);
        let u = DshFunction::witness(Point::xy(0.3, 0.1), r, big_r)?;
        let ii = check_statement_ii(mu, &u, r, big_r, &opts)?;
        println!("  II  {} (lhs {}, rhs {})", ii.verdict, ii.lhs, ii.rhs);
        if let Some(t) = &ii.tight {
            println!("      sharper bound with R* = {:.4}: rhs {} ({})", t.r_star, t.rhs, t.verdict);
        }
        let mut family = witness_family(Dimension::PLANE, r, big_r, 4, 4, 0)?;
        family.extend(atom_witnesses(mu, r, big_r)?);
        let iii = falsify_statement_iii(mu, &family, r, big_r, 1.0, &opts)?;
        println!("  III {} (largest integral {}, bound {})", iii.verdict, iii.lhs, iii.rhs);
        println!("  IV  {}", check_statement_iv(mu, &opts)?.verdict);
        println!("  V   {}", check_statement_v(mu, r, &opts)?.verdict);
    }
    Ok(())
}
