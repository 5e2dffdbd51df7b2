use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadResult, QuadSpec};

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    finite: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // largest error first; ties broken by position for determinism
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [0.0f64; 21];
    fv[10] = f(center);
    for (j, x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        fv[j] = f(center - dx);
        fv[20 - j] = f(center + dx);
    }
    if fv.iter().any(|v| !v.is_finite()) {
        return Panel { a, b, value: 0.0, error: f64::INFINITY, finite: false };
    }
    let mut res_k = WGK[10] * fv[10];
    let mut res_abs = res_k.abs();
    let mut res_g = 0.0;
    for j in 0..10 {
        let s = fv[j] + fv[20 - j];
        res_k += WGK[j] * s;
        res_abs += WGK[j] * (fv[j].abs() + fv[20 - j].abs());
        // Gauss nodes sit at the odd Kronrod indices
        if j % 2 == 1 {
            res_g += WG[j / 2] * s;
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fv[10] - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[20 - j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let abs_half = half.abs();
    Panel { a, b, value: res_k * half, error: rescale_error(err, res_abs * abs_half, res_asc * abs_half), finite: true }
}

/// Adaptive 21-point Gauss-Kronrod quadrature of `f` over `[a, b]`.
///
/// The interval is split at `spec.singular_points` first; afterwards the
/// panel with the largest error estimate is bisected until the total error
/// meets `spec.target`, the subdivision budget runs out, or panels become too
/// narrow to split. Panels with non-finite integrand values keep an infinite
/// error estimate, so a singular node never yields a silently finite result.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadSpec) -> QuadResult {
    if a == b {
        return QuadResult::exact(0.0);
    }
    if a > b {
        let r = integrate_1d(f, b, a, spec);
        return QuadResult { value: -r.value, ..r };
    }

    let mut cuts: Vec<f64> = spec.singular_points.iter().copied().filter(|&s| s > a && s < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts);
    edges.push(b);

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut evaluations = 0usize;
    for w in edges.windows(2) {
        heap.push(panel(&f, w[0], w[1]));
        evaluations += 21;
    }

    let mut value: f64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();

    let mut subdivisions = heap.len();
    let converged = loop {
        if error <= spec.target(value) {
            break true;
        }
        if subdivisions >= spec.max_subdivisions {
            break false;
        }
        let Some(worst) = heap.pop() else {
            break false;
        };
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if !(mid > worst.a && mid < worst.b)
            || width <= 4.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE)
        {
            frozen.push(worst);
            continue;
        }
        let left = panel(&f, worst.a, mid);
        let right = panel(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error = if worst.error.is_finite() {
            (error + left.error + right.error - worst.error).max(0.0)
        } else {
            heap.iter().chain(frozen.iter()).chain([&left, &right]).map(|p| p.error).sum()
        };
        heap.push(left);
        heap.push(right);
        evaluations += 42;
        subdivisions += 1;
    };

    // ordered summation keeps results reproducible
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let finite = panels.iter().all(|p| p.finite);
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    QuadResult { value, error, evaluations, converged: converged && finite }
}
