//! Acceptance suite: one pass/fail line per criterion.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nevkit::criterion::*;
use nevkit::dsh::{from_rational, Basis, Charge, Complex, DshFunction, HarmonicTerm, RationalFunction, Root};
use nevkit::kernels::{green_ball, poisson_kernel, Dimension};
use nevkit::measure::{integrated_counting, Measure, RadialProfile};
use nevkit::nevanlinna::{classical_n, classical_t, difference_t};
use nevkit::point::Point;
use nevkit::quadrature::{integrate_1d, stieltjes_against_jumps, CountingFunction, QuadSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dims() -> [Dimension; 2] {
    [Dimension::PLANE, Dimension::SPACE]
}

fn in_ball(rng: &mut ChaCha8Rng, d: Dimension, r: f64) -> Point {
    loop {
        let c: Vec<f64> = (0..d.get()).map(|_| rng.random_range(-r..=r)).collect();
        let p = Point::from(c);
        if p.norm() <= r {
            return p;
        }
    }
}

fn in_shell(rng: &mut ChaCha8Rng, d: Dimension, lo: f64, hi: f64) -> Point {
    loop {
        let p = in_ball(rng, d, hi);
        if p.norm() >= lo {
            return p;
        }
    }
}

fn on_sphere(rng: &mut ChaCha8Rng, d: Dimension, r: f64) -> Point {
    let p = in_shell(rng, d, 0.1, 1.0);
    p.scaled(r / p.norm())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_roots(rng: &mut ChaCha8Rng) -> Vec<Root> {
    let n = rng.random_range(0..=5);
    (0..n)
        .map(|_| {
            let p = in_ball(rng, Dimension::PLANE, 3.0);
            Root::new(p[0], p[1], rng.random_range(1..=3))
        })
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> RationalFunction {
    let zeros = random_roots(rng);
    let poles = random_roots(rng);
    let modulus = rng.random_range(0.2..5.0);
    let arg = rng.random_range(0.0..2.0 * PI);
    RationalFunction::new(zeros, poles, Complex::new(modulus * arg.cos(), modulus * arg.sin())).unwrap()
}

fn characteristic_identity() -> Outcome {
    let spec = QuadSpec::default();
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let f = random_rational(&mut rng);
        let t = classical_t(&f, 2.0, &spec).map_err(|e| e.to_string())?.total.get();
        let n = classical_n(&f, 1.0).map_err(|e| e.to_string())?;
        let u = from_rational(&f).map_err(|e| e.to_string())?;
        let dt = difference_t(&u, 1.0, 2.0, &spec).map_err(|e| e.to_string())?.total.get();
        let err = (t - n - dt).abs() / (1.0 + t.abs());
        require(err < 1e-7, || format!("function {i}: relative error {err:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("worst relative error {worst:.1e}"))
}

fn random_atoms(rng: &mut ChaCha8Rng, d: Dimension, radius: f64, max_atoms: usize) -> Measure {
    let mut mu = Measure::zero(d);
    for _ in 0..rng.random_range(1..=max_atoms) {
        let p = in_ball(rng, d, radius);
        mu = mu.with_atom(p, rng.random_range(0.1..3.0)).unwrap();
    }
    mu
}

/// `hat_d int_0^b h(t) / t^(d-1) dt` for a pure jump `h` vanishing near 0, in closed form.
fn riemann_closed_form(d: Dimension, jumps: &[(f64, f64)], b: f64) -> f64 {
    jumps.iter().filter(|(t, _)| *t <= b).map(|&(t, s)| s * (d.kernel(b) - d.kernel(t))).sum()
}

fn counting_identity() -> Outcome {
    let spec = QuadSpec::default();
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    let mut inequalities = 0;
    for i in 0..50 {
        let d = dims()[i % 2];
        let hat = d.hat();
        let mu = random_atoms(&mut rng, d, 2.0, 8);
        let y = in_ball(&mut rng, d, 1.0);
        let r = rng.random_range(0.5..2.5);
        let jumps: Vec<(f64, f64)> = mu.atoms().iter().map(|a| (a.point.dist(&y), a.mass)).collect();
        let h = CountingFunction::from_jumps(0.0, jumps.clone()).unwrap();
        let riemann_spec = spec.with_singular_points(jumps.iter().map(|j| j.0));
        let riemann = |b: f64| integrate_1d(|t| hat * h.value(t) / t.powi(d.get() as i32 - 1), 0.0, b, &riemann_spec);
        let stieltjes = stieltjes_against_jumps(|t| d.kernel(r) - d.kernel(t), &h, 0.0, r, &spec);
        let riemann_r = riemann(r);
        let closed = riemann_closed_form(d, &jumps, r);
        let counting = integrated_counting(&mu, &y, r, &spec).map_err(|e| e.to_string())?.value.get();
        require(riemann_r.converged && stieltjes.converged, || format!("sample {i}: quadrature flagged"))?;
        for (what, v) in [("riemann", riemann_r.value), ("closed form", closed), ("counting", counting)] {
            let err = rel(v, stieltjes.value);
            require(err < 1e-9, || format!("sample {i}: {what} vs stieltjes {err:e}"))?;
            worst = worst.max(err);
        }
        for _ in 0..5 {
            let r0 = rng.random_range(0.0..r).max(1e-3);
            let rhs = h.value(r) * (d.kernel(r) - d.kernel(r0)) + riemann(r0).value;
            require(riemann_r.value <= rhs + 1e-9 * (1.0 + rhs.abs()), || {
                format!("sample {i}: inequality fails at r0 = {r0}: {} > {rhs}", riemann_r.value)
            })?;
            inequalities += 1;
        }
    }
    Ok(format!("worst relative gap {worst:.1e}, {inequalities} inequality samples hold"))
}

fn random_charge_model(rng: &mut ChaCha8Rng, d: Dimension, big_r: f64) -> DshFunction {
    let charges = (0..rng.random_range(1..=4))
        .map(|_| {
            let location = if rng.random_bool(0.5) {
                in_ball(rng, d, 0.7 * big_r)
            } else {
                in_shell(rng, d, 1.3 * big_r, 2.0 * big_r)
            };
            Charge { location, coefficient: rng.random_range(-2.0..2.0) }
        })
        .collect();
    let mut harmonic = vec![
        HarmonicTerm { basis: Basis::Constant, coef: rng.random_range(-1.0..1.0) },
        HarmonicTerm { basis: Basis::Linear { axis: rng.random_range(0..d.get()) }, coef: rng.random_range(-1.0..1.0) },
    ];
    if d == Dimension::PLANE {
        let k = rng.random_range(2..=3);
        harmonic.push(HarmonicTerm { basis: Basis::RePow { k }, coef: rng.random_range(-1.0..1.0) });
        harmonic.push(HarmonicTerm { basis: Basis::ImPow { k }, coef: rng.random_range(-1.0..1.0) });
    }
    DshFunction::new(d, charges, harmonic).unwrap()
}

fn poisson_jensen_residual() -> Outcome {
    let opts = CheckOptions::default();
    let mut rng = rng(3);
    let mut worst = 0.0f64;
    let mut count = 0;
    for (d, functions) in [(Dimension::PLANE, 20), (Dimension::SPACE, 10)] {
        for i in 0..functions {
            let big_r = rng.random_range(0.8..2.0);
            let u = random_charge_model(&mut rng, d, big_r);
            let mut points = 0;
            while points < 20 {
                let x = in_ball(&mut rng, d, 0.8 * big_r);
                if u.charges().iter().any(|c| c.location.dist(&x) < 1e-3) {
                    continue;
                }
                let rep = verify_poisson_jensen(&u, &x, big_r, &opts).map_err(|e| e.to_string())?;
                require(rep.residual < 1e-6 && rep.verdict == Verdict::Holds, || {
                    format!("d = {} function {i}: residual {:e} ({})", d.get(), rep.residual, rep.verdict)
                })?;
                worst = worst.max(rep.residual);
                points += 1;
                count += 1;
            }
        }
    }
    Ok(format!("{count} points, worst residual {worst:.1e}"))
}

fn kernel_bounds() -> Outcome {
    let (r, big_r) = (1.0, 2.0);
    let mut rng = rng(4);
    let mut checked = 0;
    for d in dims() {
        let p_bound = poisson_kernel_bound(r, big_r, d);
        for _ in 0..10_000 {
            let x = in_ball(&mut rng, d, r);
            let y = on_sphere(&mut rng, d, big_r);
            let p = poisson_kernel(&x, &y, big_r, d).map_err(|e| e.to_string())?;
            require(p > 0.0 && p <= p_bound * (1.0 + 1e-12), || {
                format!("d = {}: Poisson kernel {p} outside (0, {p_bound}]", d.get())
            })?;
            checked += 1;
        }
        for _ in 0..10_000 {
            let x = in_ball(&mut rng, d, r);
            let y = in_ball(&mut rng, d, big_r * (1.0 - 1e-9));
            let g = green_ball(&x, &y, big_r, d).map_err(|e| e.to_string())?;
            let bound = green_bound(&x, &y, r, big_r, d);
            require(g.get() >= 0.0 && g <= bound, || {
                format!("d = {}: Green function {g:?} outside [0, {bound:?}]", d.get())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} samples, no violations"))
}

fn corollary_function(scale: f64) -> RationalFunction {
    RationalFunction::new(vec![Root::new(0.5, 0.0, 1)], vec![Root::new(2.0, 0.0, 2)], Complex::new(scale, 0.0)).unwrap()
}

/// Dense polar midpoint rule for `int ln+|f| dmu`, `mu` the normalised area of the unit disk.
fn midpoint_log_plus(scale: f64) -> f64 {
    let (nr, nt) = (2000, 4000);
    let (dr, dt) = (1.0 / nr as f64, 2.0 * PI / nt as f64);
    let mut total = 0.0;
    for i in 0..nr {
        let rho = (i as f64 + 0.5) * dr;
        let mut ring = 0.0;
        for j in 0..nt {
            let t = (j as f64 + 0.5) * dt;
            let (x, y) = (rho * t.cos(), rho * t.sin());
            let num = ((x - 0.5).powi(2) + y * y).sqrt();
            let den = (x - 2.0).powi(2) + y * y;
            ring += (scale * num / den).ln().max(0.0);
        }
        total += ring * rho;
    }
    total * dr * dt / PI
}

fn unit_disk() -> Measure {
    Measure::uniform_ball(Point::xy(0.0, 0.0), 1.0, 1.0).unwrap()
}

fn main_corollary() -> Outcome {
    let opts = CheckOptions::default();
    let mut parts = Vec::new();
    for scale in [1.0, 8.0] {
        let rep =
            check_corollary(&corollary_function(scale), &unit_disk(), 1.0, 2.0, &opts).map_err(|e| e.to_string())?;
        let margin = rep.margin.map(|m| m.get()).unwrap_or(f64::NAN);
        require(rep.verdict == Verdict::Holds && margin > 0.0, || {
            format!("scale {scale}: {} with margin {margin}", rep.verdict)
        })?;
        let oracle = midpoint_log_plus(scale);
        let gap = (rep.lhs.get() - oracle).abs();
        require(gap < 1e-5, || format!("scale {scale}: lhs {} vs oracle {oracle}", rep.lhs.get()))?;
        parts.push(format!("scale {scale}: lhs {:.6} oracle gap {gap:.1e} margin {margin:.3}", rep.lhs.get()));
    }
    Ok(parts.join("; "))
}

fn witness_point() -> Point {
    Point::xy(0.2, 0.1)
}

fn statement_ii_functions() -> Vec<(&'static str, DshFunction)> {
    let f = RationalFunction::new(vec![Root::new(0.5, 0.0, 1)], vec![Root::new(0.0, -0.25, 1)], Complex::new(3.0, 0.0))
        .unwrap();
    vec![
        ("1", DshFunction::constant(Dimension::PLANE, 1.0)),
        ("K_y", DshFunction::witness(witness_point(), 1.0, 2.0).unwrap()),
        ("ln|f|", from_rational(&f).unwrap()),
    ]
}

fn statement_ii_measures() -> Vec<(&'static str, Measure)> {
    let o = Point::xy(0.0, 0.0);
    vec![
        ("area", unit_disk()),
        ("circle", Measure::uniform_sphere(o.clone(), 0.5, 1.0).unwrap()),
        ("density t", Measure::zero(Dimension::PLANE).with_radial(o, 1.0, 1.0, RadialProfile::Power(1.0)).unwrap()),
    ]
}

fn statement_ii_grid() -> Outcome {
    let opts = CheckOptions::default();
    for (un, u) in statement_ii_functions() {
        for (mn, mu) in statement_ii_measures() {
            let rep = check_statement_ii(&mu, &u, 1.0, 2.0, &opts).map_err(|e| e.to_string())?;
            require(rep.verdict == Verdict::Holds, || format!("U = {un}, mu = {mn}: {rep:?}"))?;
        }
    }
    let big_r = 1.5;
    let u = DshFunction::witness(witness_point(), 1.0, big_r).unwrap();
    let mut ratios = Vec::new();
    for eps in [0.2, 0.05, 0.0125] {
        let mu = Measure::uniform_ball(witness_point(), eps, 1.0).unwrap();
        let rep = check_statement_ii(&mu, &u, 1.0, big_r, &opts).map_err(|e| e.to_string())?;
        require(rep.verdict == Verdict::Holds, || format!("concentration {eps}: {rep:?}"))?;
        ratios.push(rep.margin.unwrap().get() / rep.rhs.get());
    }
    require(ratios.windows(2).all(|w| w[1] < w[0]), || format!("relative margins not decreasing: {ratios:?}"))?;
    Ok(format!("9 pairs hold; relative margins {:.4} > {:.4} > {:.4}", ratios[0], ratios[1], ratios[2]))
}

fn admissible_measures() -> Vec<Measure> {
    let o2 = Point::xy(0.0, 0.0);
    let o3 = Point::xyz(0.0, 0.0, 0.0);
    let plane = || Measure::zero(Dimension::PLANE);
    let space = || Measure::zero(Dimension::SPACE);
    vec![
        Measure::uniform_sphere(o2.clone(), 1.0, 1.0).unwrap(),
        unit_disk(),
        Measure::uniform_ball(Point::xy(0.3, 0.2), 0.5, 2.0).unwrap(),
        plane().with_radial(o2.clone(), 1.0, 1.0, RadialProfile::Power(1.0)).unwrap(),
        plane().with_radial(o2.clone(), 1.0, 1.0, RadialProfile::Power(-1.0)).unwrap(),
        plane()
            .with_radial(
                o2.clone(),
                1.0,
                1.0,
                RadialProfile::Shells { breaks: vec![0.0, 0.5, 1.0], values: vec![0.0, 3.0] },
            )
            .unwrap(),
        unit_disk().with_sphere(Point::xy(-0.2, 0.4), 0.3, 0.5).unwrap(),
        Measure::uniform_sphere(o3.clone(), 1.0, 1.0).unwrap(),
        Measure::uniform_ball(o3.clone(), 1.0, 1.0).unwrap(),
        space().with_radial(o3, 1.0, 1.0, RadialProfile::Power(-1.0)).unwrap(),
    ]
}

fn atomic_measures() -> Vec<Measure> {
    let mut rng = rng(7);
    let mut out = vec![
        Measure::point_mass(Point::xy(0.0, 0.0), 1.0).unwrap(),
        unit_disk().with_atom(Point::xy(0.4, -0.3), 0.1).unwrap(),
        Measure::uniform_sphere(Point::xyz(0.0, 0.0, 0.0), 1.0, 1.0)
            .unwrap()
            .with_atom(Point::xyz(0.1, 0.2, 0.3), 0.5)
            .unwrap(),
        Measure::point_mass(Point::xyz(0.5, 0.0, 0.0), 2.0).unwrap(),
    ];
    for i in 0..6 {
        out.push(random_atoms(&mut rng, dims()[i % 2], 1.0, 4));
    }
    out
}

fn equivalence_coherence() -> Outcome {
    let run = |mu: &Measure| -> Result<[Verdict; 3], String> {
        let mut opts = CheckOptions::default();
        if mu.dimension() == Dimension::SPACE {
            opts.grid.resolution = 8;
        }
        let big_r = mu.support_radius() + 1.0;
        let i = check_statement_i(mu, 0.5, big_r, &opts).map_err(|e| e.to_string())?;
        let iv = check_statement_iv(mu, &opts).map_err(|e| e.to_string())?;
        let v = check_statement_v(mu, 0.5, &opts).map_err(|e| e.to_string())?;
        Ok([i.verdict, iv.verdict, v.verdict])
    };
    for (k, mu) in admissible_measures().iter().enumerate() {
        let v = run(mu)?;
        require(v == [Verdict::Holds; 3], || format!("admissible measure {k}: {v:?}"))?;
    }
    for (k, mu) in atomic_measures().iter().enumerate() {
        let v = run(mu)?;
        require(v == [Verdict::Fails; 3], || format!("atomic measure {k}: {v:?}"))?;
    }
    Ok("10 admissible all hold, 10 atomic all fail".into())
}

fn lemma3_equality() -> Outcome {
    let opts = CheckOptions::default();
    let delta = Measure::point_mass(Point::xy(0.0, 0.0), 1.0).unwrap();
    let rep = verify_lemma3(&delta, 1.3, 2.0, &opts).map_err(|e| e.to_string())?;
    let (l, r) = (rep.lhs.get(), rep.rhs.get());
    require((l - 1.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-12, || format!("point mass at 0: lhs {l}, rhs {r}"))?;
    let mut rng = rng(8);
    for i in 0..100 {
        let d = dims()[i % 2];
        let big_r = rng.random_range(1.0..3.0);
        let delta = random_atoms(&mut rng, d, big_r * 0.999, 6);
        let rs = rng.random_range(0.05..0.95) * big_r;
        let rep = verify_lemma3(&delta, rs, big_r, &opts).map_err(|e| e.to_string())?;
        require(rep.verdict == Verdict::Holds, || format!("random atoms {i}: {rep:?}"))?;
    }
    Ok(format!("equality |lhs - 1| = {:.1e}; 100 random atomic cases hold", (l - 1.0).abs()))
}

fn homogeneity() -> Outcome {
    let opts = CheckOptions::default();
    let mut worst = 0.0f64;
    for (un, u) in statement_ii_functions() {
        let base_t = difference_t(&u, 1.0, 2.0, &opts.quad).map_err(|e| e.to_string())?.total.get();
        let base: Vec<Verdict> = statement_ii_measures()
            .iter()
            .map(|(_, mu)| check_statement_ii(mu, &u, 1.0, 2.0, &opts).map(|r| r.verdict))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for lambda in [0.1, 7.0, 1000.0] {
            let v = u.scaled(lambda).map_err(|e| e.to_string())?;
            let t = difference_t(&v, 1.0, 2.0, &opts.quad).map_err(|e| e.to_string())?.total.get();
            let err = (t - lambda * base_t).abs() / (1.0 + (lambda * base_t).abs());
            require(err < 1e-10, || format!("U = {un}, lambda = {lambda}: T relative error {err:e}"))?;
            worst = worst.max(err);
            for ((mn, mu), b) in statement_ii_measures().iter().zip(&base) {
                let rep = check_statement_ii(mu, &v, 1.0, 2.0, &opts).map_err(|e| e.to_string())?;
                require(rep.verdict == *b, || {
                    format!("U = {un}, mu = {mn}, lambda = {lambda}: {} vs {b}", rep.verdict)
                })?;
            }
        }
    }
    Ok(format!("27 verdicts unchanged, worst T scaling error {worst:.1e}"))
}

fn files_under(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(p) = stack.pop() {
        for e in std::fs::read_dir(&p).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.push(path.strip_prefix(dir).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

fn determinism() -> Outcome {
    let scenarios = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut stdouts = Vec::new();
    for run in ["a", "b"] {
        let out = Command::new(env!("CARGO_BIN_EXE_nevkit"))
            .args(["run", "--scenario"])
            .arg(&scenarios)
            .arg("--out")
            .arg(tmp.path().join(run))
            .output()
            .map_err(|e| e.to_string())?;
        require(out.status.code() == Some(0), || format!("run {run} exited with {:?}", out.status.code()))?;
        stdouts.push(out.stdout);
    }
    require(stdouts[0] == stdouts[1], || "console output differs".into())?;
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let files = files_under(&a);
    require(files == files_under(&b), || "different file sets".into())?;
    require(files.iter().any(|f| f.ends_with("reports.jsonl")), || "no reports written".into())?;
    for f in &files {
        let same = std::fs::read(a.join(f)).unwrap() == std::fs::read(b.join(f)).unwrap();
        require(same, || format!("{} differs", f.display()))?;
    }
    Ok(format!("{} files byte-identical", files.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("characteristic identity", characteristic_identity),
        ("counting function identity and inequality", counting_identity),
        ("Poisson-Jensen residual", poisson_jensen_residual),
        ("kernel bounds", kernel_bounds),
        ("corollary with oracle", main_corollary),
        ("statement II grid and concentration trend", statement_ii_grid),
        ("coherence of I, IV and V", equivalence_coherence),
        ("counting difference equality case", lemma3_equality),
        ("homogeneity", homogeneity),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
