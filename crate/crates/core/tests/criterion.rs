use nevkit::criterion::*;
use nevkit::dsh::{from_rational, Complex, DshFunction, RationalFunction, Root};
use nevkit::kernels::Dimension;
use nevkit::measure::{Measure, RadialProfile};
use nevkit::point::Point;

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn origin() -> Point {
    Point::xy(0.0, 0.0)
}

fn circle(radius: f64) -> Measure {
    Measure::uniform_sphere(origin(), radius, 1.0).unwrap()
}

fn disk() -> Measure {
    Measure::uniform_ball(origin(), 1.0, 1.0).unwrap()
}

fn corollary_function(scale: f64) -> RationalFunction {
    RationalFunction::new(vec![Root::new(0.5, 0.0, 1)], vec![Root::new(2.0, 0.0, 2)], Complex::new(scale, 0.0)).unwrap()
}

#[test]
fn statement_i_examples() {
    let rep = check_statement_i(&circle(1.0), 1.0, 2.0, &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
    let atom = Measure::point_mass(Point::xy(0.2, 0.3), 1.0).unwrap();
    assert_eq!(check_statement_i(&atom, 1.0, 2.0, &opts()).unwrap().verdict, Verdict::Fails);
    let zero = Measure::zero(Dimension::PLANE);
    let rep = check_statement_i(&zero, 1.0, 2.0, &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds);
    assert_eq!(rep.lhs.get(), 0.0);
}

#[test]
fn statement_i_rejects_small_ball() {
    assert!(check_statement_i(&circle(1.0), 1.0, 0.9, &opts()).is_err());
}

#[test]
fn statement_ii_examples() {
    let one = DshFunction::constant(Dimension::PLANE, 1.0);
    let rep = check_statement_ii(&circle(0.5), &one, 1.0, 3.0, &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds);
    assert!((rep.lhs.get() - 1.0).abs() < 1e-12);
    assert!(rep.rhs.get() >= 10.0);

    let zero = Measure::zero(Dimension::PLANE);
    let rep = check_statement_ii(&zero, &one, 1.0, 3.0, &opts()).unwrap();
    assert_eq!(rep.lhs.get(), 0.0);
    assert_eq!(rep.rhs.get(), 0.0);
    assert_eq!(rep.verdict, Verdict::Holds);

    let u = from_rational(&corollary_function(1.0)).unwrap();
    let mut o = opts();
    o.tight = true;
    let rep = check_statement_ii(&disk(), &u, 1.0, 2.0, &o).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
    let tight = rep.tight.unwrap();
    assert_eq!(tight.verdict, Verdict::Holds);
    assert!(tight.rhs <= rep.rhs);
}

#[test]
fn statement_ii_witness_in_space() {
    let mu = Measure::uniform_ball(Point::xyz(0.0, 0.0, 0.0), 1.0, 1.0).unwrap();
    let k = DshFunction::witness(Point::xyz(0.2, -0.1, 0.3), 1.0, 2.0).unwrap();
    let mut o = opts();
    o.grid.resolution = 8;
    o.tight = true;
    let rep = check_statement_ii(&mu, &k, 1.0, 2.0, &o).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
    assert_eq!(rep.tight.unwrap().verdict, Verdict::Holds);
}

#[test]
fn statement_iii_examples() {
    let mu = disk();
    let family = witness_family(Dimension::PLANE, 1.0, 2.0, 4, 4, 0).unwrap();
    let rep = falsify_statement_iii(&mu, &family, 1.0, 2.0, 1.0, &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
    assert!(rep.lhs.is_finite());

    let p = Point::xy(0.3, 0.1);
    let atomic = Measure::point_mass(p.clone(), 1.0).unwrap();
    let family = vec![DshFunction::witness(p, 1.0, 2.0).unwrap()];
    let rep = falsify_statement_iii(&atomic, &family, 1.0, 2.0, 1.0, &opts()).unwrap();
    assert!(rep.lhs.is_pos_inf());
    assert_eq!(rep.verdict, Verdict::Fails);

    let one = vec![DshFunction::constant(Dimension::PLANE, 1.0)];
    let mu = Measure::uniform_sphere(origin(), 0.5, 2.5).unwrap();
    let rep = falsify_statement_iii(&mu, &one, 1.0, 2.0, 1.0, &opts()).unwrap();
    assert!((rep.lhs.get() - 2.5).abs() < 1e-12);
}

#[test]
fn statement_iv_examples() {
    let atom = Measure::point_mass(Point::xy(0.7, 0.1), 1.0).unwrap();
    assert_eq!(check_statement_iv(&atom, &opts()).unwrap().verdict, Verdict::Fails);
    let rep = check_statement_iv(&circle(1.0), &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds);
    assert!(rep.lhs.get().abs() < 1e-12);
    let rep = check_statement_iv(&disk(), &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds);
    // potential of the unit disk is (|x|^2 - 1)/2 inside, minimum at the centre
    assert!((rep.lhs.get() + 0.5).abs() < 1e-12);
}

#[test]
fn statement_v_examples() {
    let atom = Measure::point_mass(Point::xy(0.7, 0.1), 1.0).unwrap();
    assert_eq!(check_statement_v(&atom, 0.5, &opts()).unwrap().verdict, Verdict::Fails);
    assert_eq!(check_statement_v(&circle(1.0), 0.5, &opts()).unwrap().verdict, Verdict::Holds);
}

#[test]
fn singular_density_in_space_fails_all_three() {
    let mu = Measure::zero(Dimension::SPACE)
        .with_radial(Point::xyz(0.0, 0.0, 0.0), 1.0, 1.0, RadialProfile::Power(-2.0))
        .unwrap();
    let mut o = opts();
    o.grid.resolution = 8;
    assert_eq!(check_statement_i(&mu, 0.5, 2.0, &o).unwrap().verdict, Verdict::Fails);
    assert_eq!(check_statement_iv(&mu, &o).unwrap().verdict, Verdict::Fails);
    assert_eq!(check_statement_v(&mu, 0.5, &o).unwrap().verdict, Verdict::Fails);
}

#[test]
fn lemma3_examples() {
    let delta = Measure::point_mass(origin(), 1.0).unwrap();
    let rep = verify_lemma3(&delta, 1.3, 2.0, &opts()).unwrap();
    assert!((rep.lhs.get() - 1.0).abs() < 1e-12 && (rep.rhs.get() - 1.0).abs() < 1e-12);
    assert_eq!(rep.verdict, Verdict::Holds);
    let rep = verify_lemma3(&Measure::zero(Dimension::PLANE), 1.0, 2.0, &opts()).unwrap();
    assert_eq!((rep.lhs.get(), rep.rhs.get()), (0.0, 0.0));
    let far = Measure::point_mass(Point::xy(0.0, 1.5), 1.0).unwrap();
    let rep = verify_lemma3(&far, 1.0, 2.0, &opts()).unwrap();
    assert_eq!(rep.lhs.get(), 0.0);
    assert!(rep.rhs.get() > 0.0);
}

#[test]
fn poisson_jensen_examples() {
    let one = DshFunction::constant(Dimension::PLANE, 1.0);
    let rep = verify_poisson_jensen(&one, &Point::xy(0.3, 0.2), 1.0, &opts()).unwrap();
    assert!(rep.residual < 1e-12);

    let y0 = Point::xy(0.4, -0.2);
    let u = DshFunction::kernel_at(y0.clone(), 1.0).unwrap();
    let rep = verify_poisson_jensen(&u, &origin(), 1.0, &opts()).unwrap();
    assert!((rep.lhs.get() - y0.norm().ln()).abs() < 1e-15);
    assert!(rep.residual < 1e-9, "{rep:?}");

    let f = RationalFunction::new(vec![Root::new(0.5, 0.0, 1)], vec![Root::new(2.0, 0.0, 1)], Complex::new(1.0, 0.0))
        .unwrap();
    let u = from_rational(&f).unwrap();
    for x in random_points_in_ball(Dimension::PLANE, 0.9, 10, 7) {
        if x == Point::xy(0.5, 0.0) {
            continue;
        }
        let rep = verify_poisson_jensen(&u, &x, 1.0, &opts()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
    }
}

#[test]
fn poisson_jensen_rejects_charge_on_sphere() {
    let u = DshFunction::kernel_at(Point::xy(1.0, 0.0), 1.0).unwrap();
    assert!(verify_poisson_jensen(&u, &origin(), 1.0, &opts()).is_err());
}

#[test]
fn corollary_examples() {
    let c = RationalFunction::new(vec![], vec![], Complex::new(0.5, 0.5)).unwrap();
    let rep = check_corollary(&c, &disk(), 1.0, 2.0, &opts()).unwrap();
    assert_eq!(rep.lhs.get(), 0.0);
    assert_eq!(rep.verdict, Verdict::Holds);

    let z = RationalFunction::new(vec![Root::new(0.0, 0.0, 1)], vec![], Complex::new(1.0, 0.0)).unwrap();
    let atom = Measure::point_mass(Point::xy(0.5, 0.0), 1.0).unwrap();
    let rep = check_corollary(&z, &atom, 1.0, 2.0, &opts()).unwrap();
    assert!(rep.rhs.is_pos_inf());
    assert_eq!(rep.verdict, Verdict::Holds);

    let rep = check_corollary(&corollary_function(1.0), &disk(), 1.0, 2.0, &opts()).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
    assert!(rep.margin.unwrap().get() > 0.0);
    assert!(!rep.diagnostics.iter().any(|d| d.contains("mismatch")), "{rep:?}");
}

#[test]
fn atom_witnesses_expose_atomic_measures() {
    let mu = disk().with_atom(Point::xy(0.37, -0.11), 0.2).unwrap().with_atom(Point::xy(1.5, 0.0), 1.0).unwrap();
    let inner = Measure::point_mass(Point::xy(0.37, -0.11), 0.2).unwrap();
    assert_eq!(atom_witnesses(&mu, 1.0, 2.0).unwrap().len(), 1);
    let mut family = witness_family(Dimension::PLANE, 1.0, 2.0, 4, 2, 0).unwrap();
    let without = falsify_statement_iii(&inner, &family, 1.0, 2.0, 1.0, &opts()).unwrap();
    assert!(without.lhs.is_finite());
    family.extend(atom_witnesses(&inner, 1.0, 2.0).unwrap());
    let with = falsify_statement_iii(&inner, &family, 1.0, 2.0, 1.0, &opts()).unwrap();
    assert_eq!(with.verdict, Verdict::Fails);
}

#[test]
fn accumulating_disks_have_unbounded_partial_suprema() {
    // mass 1/k^2 on the disk of radius 2^-k: finite total mass, but N_0 grows
    // like ln 2 times the harmonic sum
    let partial = |n: u32| {
        let mut mu = Measure::zero(Dimension::PLANE);
        for k in 1..=n {
            mu = mu
                .with_radial(origin(), 0.5f64.powi(k as i32), 1.0 / (k * k) as f64, RadialProfile::Power(0.0))
                .unwrap();
        }
        mu
    };
    let mut o = opts();
    o.grid.resolution = 8;
    let mut sups = Vec::new();
    for n in [4, 8, 16, 32] {
        let rep = check_statement_v(&partial(n), 0.5, &o).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        sups.push(rep.lhs.get());
    }
    for w in sups.windows(2) {
        // a doubling of n adds about ln 2 * ln 2
        assert!(w[1] - w[0] > 0.4, "{sups:?}");
    }
}
