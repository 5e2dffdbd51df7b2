//! Scenario files: a measure, test functions, radii and a list of checks,
//! run into JSON-lines reports and CSV tables.
//!
//! ```json
//! {
//!   "name": "corollary_rational_area_measure",
//!   "dimension": 2,
//!   "measure": {"radial": [{"radius": 1.0, "mass": 1.0}]},
//!   "functions": [{"rational": {"zeros": [{"re": 0.5}], "poles": [{"re": 2.0, "mult": 2}]}}],
//!   "radii": {"r": 1.0, "R": 2.0, "r0": 1.0},
//!   "checks": ["corollary", "statement_ii"],
//!   "grid": 32,
//!   "expect_fail": []
//! }
//! ```
//!
//! A function is one of `{"rational": ..}`, `{"dsh": ..}` (charge model,
//! `dimension` optional), `{"constant": c}` or `{"witness": {"y": [..]}}`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::{
    atom_witnesses, check_corollary, check_statement_i, check_statement_ii, check_statement_iv, check_statement_v,
    falsify_statement_iii, r_star, random_points_in_ball, verify_lemma3, verify_poisson_jensen, witness_family,
    CheckOptions, CheckReport, Verdict,
};
use crate::dsh::{from_rational, riesz_lower_variation, DshFunction, RationalFunction};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::kernels::Dimension;
use crate::measure::{integrated_counting, Grid, Measure};
use crate::point::Point;
use crate::quadrature::QuadSpec;

/// Environment variable holding the seed of all random sampling.
pub const SEED_VAR: &str = "NEVKIT_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    StatementI,
    StatementIi,
    StatementIii,
    StatementIv,
    StatementV,
    Corollary,
    Lemma3,
    PoissonJensen,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::StatementI => "statement_i",
            CheckName::StatementIi => "statement_ii",
            CheckName::StatementIii => "statement_iii",
            CheckName::StatementIv => "statement_iv",
            CheckName::StatementV => "statement_v",
            CheckName::Corollary => "corollary",
            CheckName::Lemma3 => "lemma3",
            CheckName::PoissonJensen => "poisson_jensen",
        }
    }

    fn per_function(self) -> bool {
        matches!(self, CheckName::StatementIi | CheckName::Corollary | CheckName::Lemma3 | CheckName::PoissonJensen)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Radii {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    /// Defaults to `r`.
    #[serde(default)]
    pub r0: Option<f64>,
}

impl Radii {
    pub fn r0(&self) -> f64 {
        self.r0.unwrap_or(self.r)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum FunctionRepr {
    Rational(RationalFunction),
    Dsh(serde_json::Value),
    Constant(f64),
    Witness { y: Point },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioRepr {
    name: String,
    dimension: Dimension,
    measure: serde_json::Value,
    #[serde(default)]
    functions: Vec<FunctionRepr>,
    radii: Radii,
    checks: Vec<CheckName>,
    #[serde(default)]
    quad: QuadSpec,
    #[serde(default)]
    grid: Option<usize>,
    #[serde(default)]
    expect_fail: Vec<CheckName>,
    #[serde(default)]
    t_cap: Option<f64>,
    #[serde(default)]
    sample_points: Option<usize>,
}

/// A test function with a label for report names.
#[derive(Clone, Debug)]
pub struct ScenarioFunction {
    pub label: String,
    pub dsh: DshFunction,
    pub rational: Option<RationalFunction>,
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub dimension: Dimension,
    pub measure: Measure,
    pub functions: Vec<ScenarioFunction>,
    pub radii: Radii,
    pub checks: Vec<CheckName>,
    pub quad: QuadSpec,
    pub grid: Grid,
    pub expect_fail: Vec<CheckName>,
    /// Cap of the characteristic for the family search.
    pub t_cap: f64,
    /// Interior points per function for the Poisson-Jensen residual.
    pub sample_points: usize,
}

fn parse_error(e: serde_path_to_error::Error<serde_json::Error>) -> Error {
    let path = e.path().to_string();
    Error::parse(if path == "." { "scenario".into() } else { path }, e.inner().to_string())
}

/// Re-root a field error from a nested parser under `prefix`.
fn nest(prefix: &str, e: Error) -> Error {
    match e {
        Error::Parse { field, message } => Error::parse(format!("{prefix}.{field}"), message),
        other => Error::parse(prefix, other.to_string()),
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let repr: ScenarioRepr = serde_path_to_error::deserialize(de).map_err(parse_error)?;
        Scenario::from_repr(repr)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Scenario::from_json(&fs::read_to_string(path)?)
    }

    fn from_repr(repr: ScenarioRepr) -> Result<Self> {
        let d = repr.dimension;
        let mut measure = repr.measure;
        if let Some(obj) = measure.as_object_mut() {
            obj.entry("dimension").or_insert(serde_json::json!(d.get()));
        }
        let measure = Measure::from_value(measure).map_err(|e| nest("measure", e))?;
        if measure.dimension() != d {
            return Err(Error::parse("measure.dimension", "differs from the scenario dimension"));
        }
        let (r, big_r) = (repr.radii.r, repr.radii.big_r);
        if !(r > 0.0 && big_r > r && big_r.is_finite()) {
            return Err(Error::parse("radii", format!("need 0 < r < R, got r = {r}, R = {big_r}")));
        }
        if !(repr.radii.r0() > 0.0 && repr.radii.r0().is_finite()) {
            return Err(Error::parse("radii.r0", "must be positive"));
        }
        let mut functions = Vec::new();
        for (i, f) in repr.functions.into_iter().enumerate() {
            let field = format!("functions[{i}]");
            let label = format!("f{i}");
            let (dsh, rational) = match f {
                FunctionRepr::Rational(q) => {
                    if d != Dimension::PLANE {
                        return Err(Error::parse(field, "rational functions need dimension 2"));
                    }
                    q.validate().map_err(|e| nest(&field, e))?;
                    (from_rational(&q).map_err(|e| nest(&field, e))?, Some(q))
                }
                FunctionRepr::Dsh(mut v) => {
                    if let Some(obj) = v.as_object_mut() {
                        obj.entry("dimension").or_insert(serde_json::json!(d.get()));
                    }
                    (DshFunction::from_value(v).map_err(|e| nest(&format!("{field}.dsh"), e))?, None)
                }
                FunctionRepr::Constant(c) => {
                    if !c.is_finite() {
                        return Err(Error::parse(format!("{field}.constant"), "must be finite"));
                    }
                    (DshFunction::constant(d, c), None)
                }
                FunctionRepr::Witness { y } => {
                    if y.dim() != d.get() {
                        return Err(Error::parse(format!("{field}.witness.y"), "wrong number of coordinates"));
                    }
                    (DshFunction::witness(y, r, big_r).map_err(|e| nest(&field, e))?, None)
                }
            };
            if dsh.dimension() != d {
                return Err(Error::parse(field, "function dimension differs from the scenario"));
            }
            functions.push(ScenarioFunction { label, dsh, rational });
        }
        if repr.checks.is_empty() {
            return Err(Error::parse("checks", "list at least one check"));
        }
        for c in &repr.checks {
            let needs_functions = matches!(
                c,
                CheckName::StatementIi | CheckName::Corollary | CheckName::Lemma3 | CheckName::PoissonJensen
            );
            if needs_functions && functions.is_empty() {
                return Err(Error::parse("functions", format!("check {} needs at least one function", c.as_str())));
            }
            if *c == CheckName::Corollary && !functions.iter().any(|f| f.rational.is_some()) {
                return Err(Error::parse("functions", "corollary needs a rational function"));
            }
            if matches!(c, CheckName::StatementIi | CheckName::StatementIii | CheckName::Corollary)
                && measure.support_radius() > r * (1.0 + 1e-12)
            {
                return Err(Error::parse(
                    "measure",
                    format!("{} needs the measure inside the closed ball of radius r", c.as_str()),
                ));
            }
            if *c == CheckName::StatementI && measure.support_radius() >= big_r {
                return Err(Error::parse("radii.R", "statement_i needs R beyond the support"));
            }
        }
        repr.quad.validate().map_err(|e| nest("quad", e))?;
        let grid = Grid::new(repr.grid.unwrap_or(Grid::default().resolution));
        grid.validate().map_err(|_| Error::parse("grid", "must be positive"))?;
        let t_cap = repr.t_cap.unwrap_or(1.0);
        if !(t_cap > 0.0 && t_cap.is_finite()) {
            return Err(Error::parse("t_cap", "must be positive"));
        }
        Ok(Scenario {
            name: repr.name,
            dimension: d,
            measure,
            functions,
            radii: repr.radii,
            checks: repr.checks,
            quad: repr.quad,
            grid,
            expect_fail: repr.expect_fail,
            t_cap,
            sample_points: repr.sample_points.unwrap_or(5),
        })
    }
}

/// Command-line overrides.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunFlags {
    pub tolerance: Option<f64>,
    pub grid: Option<usize>,
    pub tight: bool,
    /// Treat every failure as expected.
    pub expect_fail: bool,
    pub seed: u64,
}

impl RunFlags {
    /// Seed from `NEVKIT_SEED`, 0 when unset.
    pub fn seed_from_env() -> Result<u64> {
        match std::env::var(SEED_VAR) {
            Ok(s) => s.trim().parse().map_err(|_| Error::parse(SEED_VAR, format!("not an unsigned integer: {s:?}"))),
            Err(_) => Ok(0),
        }
    }
}

/// One report with its scenario context.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub scenario: String,
    pub check: CheckName,
    pub expected_fail: bool,
    #[serde(flatten)]
    pub report: CheckReport,
}

impl Entry {
    pub fn unexpected_failure(&self) -> bool {
        self.report.verdict == Verdict::Fails && !self.expected_fail
    }
}

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok = 0,
    UnexpectedFailure = 1,
    Invalid = 2,
    Undetermined = 3,
}

pub fn outcome(entries: &[Entry]) -> Outcome {
    if entries.iter().any(Entry::unexpected_failure) {
        Outcome::UnexpectedFailure
    } else if entries.iter().any(|e| e.report.verdict == Verdict::Undetermined) {
        Outcome::Undetermined
    } else {
        Outcome::Ok
    }
}

fn options(s: &Scenario, flags: &RunFlags) -> CheckOptions {
    let mut o = CheckOptions { quad: s.quad.clone(), grid: s.grid, tight: flags.tight, ..CheckOptions::default() };
    if let Some(t) = flags.tolerance {
        o.tolerance = t;
    }
    if let Some(g) = flags.grid {
        o.grid.resolution = g;
    }
    o
}

fn named(mut rep: CheckReport, check: CheckName, label: Option<&str>) -> CheckReport {
    rep.name = match label {
        Some(l) => format!("{}:{l}", check.as_str()),
        None => check.as_str().to_string(),
    };
    rep
}

fn run_one(
    s: &Scenario,
    check: CheckName,
    f: Option<&ScenarioFunction>,
    o: &CheckOptions,
    seed: u64,
) -> Result<CheckReport> {
    let mu = &s.measure;
    let Radii { r, big_r, .. } = s.radii;
    let r0 = s.radii.r0();
    let label = f.map(|f| f.label.as_str());
    let rep = match check {
        CheckName::StatementI => check_statement_i(mu, r0, big_r, o)?,
        CheckName::StatementIv => check_statement_iv(mu, o)?,
        CheckName::StatementV => check_statement_v(mu, r0, o)?,
        CheckName::StatementIi => check_statement_ii(mu, &f.expect("per function").dsh, r, big_r, o)?,
        CheckName::StatementIii => {
            let per_axis = if s.dimension == Dimension::PLANE { 8 } else { 4 };
            let mut family = witness_family(s.dimension, r, big_r, per_axis, 8, seed)?;
            family.extend(atom_witnesses(mu, r, big_r)?);
            family.push(DshFunction::constant(s.dimension, 1.0));
            family.extend(s.functions.iter().map(|f| f.dsh.clone()));
            falsify_statement_iii(mu, &family, r, big_r, s.t_cap, o)?
        }
        CheckName::Corollary => {
            let f = f.expect("per function");
            match &f.rational {
                Some(q) => check_corollary(q, mu, r, big_r, o)?,
                None => return Err(Error::input("not a rational function")),
            }
        }
        CheckName::Lemma3 => {
            let delta = riesz_lower_variation(&f.expect("per function").dsh);
            verify_lemma3(&delta, r_star(r, big_r, s.dimension), big_r, o)?
        }
        CheckName::PoissonJensen => {
            let u = &f.expect("per function").dsh;
            let charges: Vec<&Point> = u.charges().iter().map(|c| &c.location).collect();
            let points = random_points_in_ball(s.dimension, 0.9 * big_r, s.sample_points, seed);
            let mut worst: Option<CheckReport> = None;
            for x in points.iter().filter(|x| !charges.contains(x)) {
                let rep = verify_poisson_jensen(u, x, big_r, o)?;
                let replace = match &worst {
                    None => true,
                    Some(w) => {
                        severity(rep.verdict) > severity(w.verdict)
                            || (rep.verdict == w.verdict && rep.residual > w.residual)
                    }
                };
                if replace {
                    worst = Some(rep);
                }
            }
            let mut rep = worst.ok_or_else(|| Error::input("no admissible sample point"))?;
            rep.diagnostics.push(format!("worst of {} interior points", points.len()));
            rep
        }
    };
    Ok(named(rep, check, label))
}

fn severity(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => 0,
        Verdict::Undetermined => 1,
        Verdict::Fails => 2,
    }
}

/// Run every listed check. Checks run in parallel; the result order follows
/// the scenario.
pub fn run_checks(s: &Scenario, flags: &RunFlags) -> Result<Vec<Entry>> {
    let o = options(s, flags);
    o.grid.validate()?;
    let mut tasks: Vec<(CheckName, Option<&ScenarioFunction>)> = Vec::new();
    for &c in &s.checks {
        if c.per_function() {
            for f in &s.functions {
                if c == CheckName::Corollary && f.rational.is_none() {
                    continue;
                }
                tasks.push((c, Some(f)));
            }
        } else {
            tasks.push((c, None));
        }
    }
    let reports: Vec<Result<CheckReport>> = tasks.par_iter().map(|(c, f)| run_one(s, *c, *f, &o, flags.seed)).collect();
    tasks
        .iter()
        .zip(reports)
        .map(|((c, _), rep)| {
            Ok(Entry {
                scenario: s.name.clone(),
                check: *c,
                expected_fail: flags.expect_fail || s.expect_fail.contains(c),
                report: rep?,
            })
        })
        .collect()
}

fn opt_ext(v: Option<ExtReal>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// `reports.jsonl`, `summary.csv` and `counting_grid.csv` in `dir`.
pub fn write_outputs(dir: &Path, s: &Scenario, entries: &[Entry], flags: &RunFlags) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut jsonl = fs::File::create(dir.join("reports.jsonl"))?;
    for e in entries {
        serde_json::to_writer(&mut jsonl, e)?;
        jsonl.write_all(b"\n")?;
    }
    let mut csv = csv::Writer::from_path(dir.join("summary.csv"))?;
    csv.write_record(["name", "lhs", "rhs", "margin", "verdict"])?;
    for e in entries {
        let r = &e.report;
        csv.write_record([
            r.name.clone(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            opt_ext(r.margin),
            r.verdict.to_string(),
        ])?;
    }
    csv.flush()?;
    write_counting_grid(&dir.join("counting_grid.csv"), s, flags)
}

/// `N_y(r0)` on a lattice of the closed ball of radius `R`; in space the
/// slice through the origin orthogonal to the last axis.
pub fn write_counting_grid(path: &Path, s: &Scenario, flags: &RunFlags) -> Result<()> {
    let o = options(s, flags);
    let d = s.dimension.get();
    let mut csv = csv::Writer::from_path(path)?;
    csv.write_record(["x", "y", "n"])?;
    if d > 3 {
        csv.flush()?;
        return Ok(());
    }
    let n = o.grid.resolution;
    let big_r = s.radii.big_r;
    let h = 2.0 * big_r / n as f64;
    let mut points = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let (x, y) = (-big_r + h * i as f64, -big_r + h * j as f64);
            if x.hypot(y) <= big_r * (1.0 + 1e-12) {
                points.push(if d == 2 { Point::xy(x, y) } else { Point::xyz(x, y, 0.0) });
            }
        }
    }
    let r0 = s.radii.r0();
    let values: Vec<Result<ExtReal>> =
        points.par_iter().map(|p| integrated_counting(&s.measure, p, r0, &o.quad).map(|e| e.value)).collect();
    for (p, v) in points.iter().zip(values) {
        csv.write_record([p[0].to_string(), p[1].to_string(), v?.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

/// Scenario files under `path`: the file itself, or every `*.json` in the
/// directory in name order.
pub fn scenario_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(Error::input(format!("no scenario files in {}", path.display())));
        }
        Ok(files)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

/// Load, run and write one scenario file or a directory of them. With
/// several scenarios each gets its own subdirectory of `out`.
pub fn run_path(path: &Path, out: &Path, flags: &RunFlags) -> Result<Vec<Entry>> {
    let files = scenario_files(path)?;
    let scenarios =
        files.iter().map(|f| Scenario::from_file(f).map_err(|e| with_file(f, e))).collect::<Result<Vec<_>>>()?;
    let single = scenarios.len() == 1 && !path.is_dir();
    let mut all = Vec::new();
    for s in &scenarios {
        let entries = run_checks(s, flags)?;
        let dir = if single { out.to_path_buf() } else { out.join(&s.name) };
        write_outputs(&dir, s, &entries, flags)?;
        all.extend(entries);
    }
    Ok(all)
}

fn with_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { field, message } => Error::parse(format!("{}: {field}", path.display()), message),
        other => other,
    }
}

/// Parameter varied by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    R,
    BigR,
    R0,
    Grid,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(SweepParam::R),
            "R" => Ok(SweepParam::BigR),
            "r0" => Ok(SweepParam::R0),
            "grid" => Ok(SweepParam::Grid),
            _ => Err(Error::parse("param", format!("expected one of r, R, r0, grid; got {s:?}"))),
        }
    }
}

impl SweepParam {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::R => "r",
            SweepParam::BigR => "R",
            SweepParam::R0 => "r0",
            SweepParam::Grid => "grid",
        }
    }
}

/// One scenario run per value, written as a long table `sweep.csv`.
pub fn sweep(
    path: &Path,
    out: &Path,
    param: SweepParam,
    values: &[f64],
    flags: &RunFlags,
) -> Result<Vec<(f64, Entry)>> {
    if values.is_empty() {
        return Err(Error::parse("values", "list at least one value"));
    }
    let base = fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for &v in values {
        let mut json: serde_json::Value = serde_json::from_str(&base)?;
        match param {
            SweepParam::Grid => {
                if !(v >= 1.0 && v.fract() == 0.0) {
                    return Err(Error::parse("values", format!("grid needs positive integers, got {v}")));
                }
                json["grid"] = serde_json::json!(v as usize);
            }
            _ => {
                json["radii"][match param {
                    SweepParam::R => "r",
                    SweepParam::BigR => "R",
                    _ => "r0",
                }] = serde_json::json!(v)
            }
        }
        let s = Scenario::from_json(&json.to_string()).map_err(|e| with_file(path, e))?;
        let mut f = flags.clone();
        if param == SweepParam::Grid {
            f.grid = None;
        }
        for e in run_checks(&s, &f)? {
            rows.push((v, e));
        }
    }
    fs::create_dir_all(out)?;
    let mut csv = csv::Writer::from_path(out.join("sweep.csv"))?;
    csv.write_record(["param", "value", "name", "lhs", "rhs", "margin", "ratio", "verdict"])?;
    for (v, e) in &rows {
        let r = &e.report;
        let ratio = match (r.lhs.finite(), r.rhs.finite()) {
            (Some(l), Some(h)) if l != 0.0 => (h / l).to_string(),
            _ => String::new(),
        };
        csv.write_record([
            param.as_str().to_string(),
            v.to_string(),
            r.name.clone(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            opt_ext(r.margin),
            ratio,
            r.verdict.to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "name": "t", "dimension": 2,
        "measure": {"spheres": [{"radius": 0.5, "mass": 1.0}]},
        "functions": [{"constant": 1.0}],
        "radii": {"r": 1.0, "R": 2.0},
        "checks": ["statement_ii"], "grid": 8
    }"#;

    #[test]
    fn parses_and_defaults() {
        let s = Scenario::from_json(BASE).unwrap();
        assert_eq!(s.radii.r0(), 1.0);
        assert_eq!(s.grid.resolution, 8);
        assert_eq!(s.functions[0].label, "f0");
    }

    #[test]
    fn bad_radii_name_the_field() {
        let text = BASE.replace(r#""r": 1.0, "R": 2.0"#, r#""r": 2.0, "R": 2.0"#);
        let err = Scenario::from_json(&text).unwrap_err();
        assert!(err.to_string().starts_with("radii"), "{err}");
    }

    #[test]
    fn unknown_check_is_rejected() {
        let text = BASE.replace("statement_ii", "statement_vi");
        let err = Scenario::from_json(&text).unwrap_err();
        assert!(err.to_string().contains("checks"), "{err}");
    }

    #[test]
    fn measure_errors_are_nested() {
        let text = BASE.replace(r#""radius": 0.5"#, r#""radius": -0.5"#);
        let err = Scenario::from_json(&text).unwrap_err();
        assert!(err.to_string().contains("measure.spheres[0]"), "{err}");
    }

    #[test]
    fn sweep_param_names() {
        assert_eq!("R".parse::<SweepParam>().unwrap(), SweepParam::BigR);
        assert!("x".parse::<SweepParam>().is_err());
    }
}
