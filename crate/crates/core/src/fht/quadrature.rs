//! Globally adaptive Gauss–Kronrod (G7/K15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Upper bound on live segments; keeps pathological integrands bounded.
const MAX_SEGMENTS: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    /// Estimate of `∫|f|`.
    pub abs_integral: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_integral: f64,
    depth: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            // deterministic tie-break
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, depth: usize) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_centre = f(centre);
    let mut kronrod = f_centre * WGK[7];
    let mut gauss = f_centre * WG[3];
    let mut samples = [Complex64::new(0.0, 0.0); 15];
    samples[7] = f_centre;
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(centre - dx);
        let hi = f(centre + dx);
        samples[j] = lo;
        samples[14 - j] = hi;
        kronrod += (lo + hi) * WGK[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut abs_sum = f_centre.norm() * WGK[7];
    let mut asc = (f_centre - mean).norm() * WGK[7];
    for j in 0..7 {
        let w = WGK[j];
        abs_sum += (samples[j].norm() + samples[14 - j].norm()) * w;
        asc += ((samples[j] - mean).norm() + (samples[14 - j] - mean).norm()) * w;
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let raw = ((kronrod - gauss) * half).norm();
    let mut error = raw;
    if res_asc > 0.0 && raw > 0.0 {
        error = res_asc * (200.0 * raw / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if floor > error {
        error = floor;
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        error = f64::INFINITY;
    }
    Segment {
        a,
        b,
        value,
        error,
        abs_integral: res_abs,
        depth,
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The segment with the largest error estimate is bisected until the summed
/// estimate drops below `tol`. Segments at `max_depth` are frozen; if they
/// alone exceed the tolerance the result is returned unconverged.
pub(crate) fn integrate<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> QuadResult {
    if a == b {
        return QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            abs_integral: 0.0,
            converged: true,
        };
    }
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let first = kronrod(f, a, b, 0);
    let mut total = first.error;
    let mut frozen_error = 0.0;
    heap.push(first);
    let mut converged = false;
    loop {
        if total <= tol {
            converged = true;
            break;
        }
        if frozen_error > tol || heap.len() + frozen.len() >= MAX_SEGMENTS {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.depth >= max_depth || !worst.error.is_finite() || mid <= worst.a || mid >= worst.b {
            frozen_error += worst.error;
            frozen.push(worst);
            continue;
        }
        let left = kronrod(f, worst.a, mid, worst.depth + 1);
        let right = kronrod(f, mid, worst.b, worst.depth + 1);
        total += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    let segments = heap.iter().chain(frozen.iter());
    let (value, error, abs_integral) = segments.fold(
        (Complex64::new(0.0, 0.0), 0.0, 0.0),
        |(v, e, m), s| (v + s.value, e + s.error, m + s.abs_integral),
    );
    QuadResult {
        value,
        error,
        abs_integral,
        converged: converged || error <= tol,
    }
}

const CHUNK: f64 = 2.0;
const MAX_CHUNKS: usize = 400;

/// Integrates `f` from `start` to `±∞` (sign of `direction`) in chunks of
/// fixed length. Chunk `k` receives `6/(π²(k+1)²)` of the tolerance, and the
/// walk stops once a chunk holds less than `tol/1000` in absolute mass, on
/// the premise that `f` decays monotonically in the tail. A chunk that
/// misses its share marks the result unconverged without ending the walk.
pub(crate) fn integrate_to_infinity<F: Fn(f64) -> Complex64>(
    f: &F,
    start: f64,
    direction: f64,
    tol: f64,
    max_depth: usize,
) -> QuadResult {
    let mut total = QuadResult {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        abs_integral: 0.0,
        converged: false,
    };
    let mut all_converged = true;
    let mut a = start;
    for k in 0..MAX_CHUNKS {
        let b = a + direction.signum() * CHUNK;
        let share = 6.0 / (std::f64::consts::PI.powi(2) * ((k + 1) as f64).powi(2));
        let chunk = integrate(f, a.min(b), a.max(b), tol * share, max_depth);
        total.value += chunk.value;
        total.error += chunk.error;
        total.abs_integral += chunk.abs_integral;
        all_converged &= chunk.converged;
        if chunk.abs_integral <= 1e-3 * tol {
            total.converged = all_converged;
            return total;
        }
        a = b;
    }
    total
}
