//! Running a scenario from the library and writing its reports, the same
//! pipeline the command-line tool uses.

use nevkit::scenario::{outcome, run_checks, write_outputs, RunFlags, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = Scenario::from_json(
        r#"{
            "name": "example",
            "dimension": 2,
            "measure": {"spheres": [{"center": [0.0, 0.0], "radius": 0.5, "mass": 1.0}]},
            "functions": [{"constant": 1.0}, {"witness": {"y": [0.3, -0.2]}}],
            "radii": {"r": 1.0, "R": 2.0, "r0": 0.5},
            "checks": ["statement_i", "statement_ii", "statement_iv", "statement_v", "lemma3"],
            "grid": 16
        }"#,
    )?;
    let flags = RunFlags { tight: true, ..RunFlags::default() };
    let entries = run_checks(&scenario, &flags)?;
    for e in &entries {
        println!("{:<20} {:<12} margin {:?}", e.report.name, e.report.verdict, e.report.margin);
    }
    let out = std::env::temp_dir().join("nevkit-example");
    write_outputs(&out, &scenario, &entries, &flags)?;
    println!("reports written to {}; exit status would be {}", out.display(), outcome(&entries) as u8);
    Ok(())
}
