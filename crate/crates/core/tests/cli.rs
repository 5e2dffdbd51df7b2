use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.json"))
}

fn nevkit(args: &[&str], scenario: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nevkit"))
        .args(args)
        .arg("--scenario")
        .arg(scenario)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, json).unwrap();
    p
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const ATOMIC: &str = r#"{
  "name": "atoms",
  "dimension": 2,
  "measure": {"atoms": [{"point": [0.3, 0.1], "mass": 1.0}]},
  "radii": {"r": 1.0, "R": 2.0, "r0": 0.5},
  "checks": ["statement_v"],
  "grid": 4
}"#;

fn sweep_rows(out: &Path) -> Vec<csv::StringRecord> {
    let mut rdr = csv::Reader::from_path(out.join("sweep.csv")).unwrap();
    rdr.records().map(Result::unwrap).collect()
}

#[test]
fn bundled_corollary_scenario_holds() {
    let tmp = TempDir::new().unwrap();
    let o = nevkit(&["run"], &scenario("corollary_rational_area_measure"), tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut rdr = csv::Reader::from_path(tmp.path().join("summary.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["name", "lhs", "rhs", "margin", "verdict"]);
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| &r[4] == "holds"), "{rows:?}");
    let reports = std::fs::read_to_string(tmp.path().join("reports.jsonl")).unwrap();
    for line in reports.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], "holds");
    }
    assert!(tmp.path().join("counting_grid.csv").exists());
}

#[test]
fn unexpected_failure_exits_one() {
    let tmp = TempDir::new().unwrap();
    let s = write(&tmp, "atoms.json", ATOMIC);
    let o = nevkit(&["run"], &s, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("fails"));
}

#[test]
fn expected_failure_exits_zero() {
    let tmp = TempDir::new().unwrap();
    let s = write(&tmp, "atoms.json", ATOMIC);
    let o = nevkit(&["run", "--expect-fail"], &s, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = nevkit(&["run"], &scenario("atomic_measure_expected_fail"), &tmp.path().join("bundled"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn malformed_radii_exit_two() {
    let tmp = TempDir::new().unwrap();
    let s = write(&tmp, "bad.json", &ATOMIC.replace(r#""R": 2.0"#, r#""R": 1.0"#));
    let o = nevkit(&["run"], &s, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("radii"), "{}", stderr(&o));
}

#[test]
fn parse_errors_exit_two_and_name_the_field() {
    let tmp = TempDir::new().unwrap();
    let s = write(&tmp, "bad.json", &ATOMIC.replace(r#""mass": 1.0"#, r#""mass": -1.0"#));
    let o = nevkit(&["run"], &s, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("measure.atoms[0].mass"), "{}", stderr(&o));

    let s = write(&tmp, "unknown.json", &ATOMIC.replace(r#""statement_v""#, r#""statement_vi""#));
    assert_eq!(nevkit(&["run"], &s, &tmp.path().join("out")).status.code(), Some(2));
    let o = nevkit(&["run"], &tmp.path().join("missing.json"), &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_tolerance_flag_exits_two() {
    let tmp = TempDir::new().unwrap();
    let s = write(&tmp, "atoms.json", ATOMIC);
    let o = nevkit(&["run", "--tol", "-1"], &s, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_three() {
    let tmp = TempDir::new().unwrap();
    let s = write(
        &tmp,
        "starved.json",
        r#"{
  "name": "starved",
  "dimension": 2,
  "measure": {"radial": [{"center": [0.3, 0.1], "radius": 0.5, "mass": 1.0}]},
  "functions": [{"witness": {"y": [0.35, 0.12]}}],
  "radii": {"r": 1.0, "R": 2.0},
  "checks": ["statement_ii"],
  "quad": {"abs_tol": 1e-15, "rel_tol": 1e-15, "max_subdivisions": 8, "circle_nodes": 8},
  "grid": 4
}"#,
    );
    let o = nevkit(&["run"], &s, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("undetermined"));
}

#[test]
fn seed_variable_must_be_an_integer() {
    let tmp = TempDir::new().unwrap();
    let s = write(&tmp, "atoms.json", ATOMIC);
    let o = Command::new(env!("CARGO_BIN_EXE_nevkit"))
        .env("NEVKIT_SEED", "abc")
        .args(["run", "--scenario"])
        .arg(&s)
        .arg("--out")
        .arg(tmp.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_over_outer_radius_gives_one_row_per_value() {
    let tmp = TempDir::new().unwrap();
    let json = std::fs::read_to_string(scenario("corollary_rational_area_measure")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["checks"] = serde_json::json!(["corollary"]);
    v["functions"] = serde_json::json!([v["functions"][0]]);
    let s = write(&tmp, "corollary.json", &v.to_string());
    let o = nevkit(&["sweep", "--param", "R", "--values", "1.5,2,3,5"], &s, tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = sweep_rows(tmp.path());
    assert_eq!(rows.len(), 4);
    let values: Vec<&str> = rows.iter().map(|r| &r[1]).collect();
    assert_eq!(values, ["1.5", "2", "3", "5"]);
    assert!(rows.iter().all(|r| &r[0] == "R" && &r[7] == "holds"), "{rows:?}");
}

#[test]
fn sweep_without_values_exits_two() {
    let tmp = TempDir::new().unwrap();
    let s = write(&tmp, "atoms.json", ATOMIC);
    let o = nevkit(&["sweep", "--param", "R", "--values", ""], &s, tmp.path());
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = nevkit(&["sweep", "--param", "R"], &s, tmp.path());
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = nevkit(&["sweep", "--param", "q", "--values", "1"], &s, tmp.path());
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn sweep_over_grid_gives_nondecreasing_suprema() {
    let tmp = TempDir::new().unwrap();
    let s = write(
        &tmp,
        "sup.json",
        r#"{
  "name": "sup",
  "dimension": 2,
  "measure": {
    "radial": [{"center": [0.3, 0.1], "radius": 0.5, "mass": 1.0, "profile": {"power": 1.0}}],
    "spheres": [{"center": [-0.4, 0.2], "radius": 0.3, "mass": 0.5}]
  },
  "radii": {"r": 1.0, "R": 2.0, "r0": 0.7},
  "checks": ["statement_i"]
}"#,
    );
    let o = nevkit(&["sweep", "--param", "grid", "--values", "16,32,64"], &s, tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let sups: Vec<f64> = sweep_rows(tmp.path()).iter().map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(sups.len(), 3);
    assert!(sups.windows(2).all(|w| w[1] >= w[0]), "{sups:?}");
}
