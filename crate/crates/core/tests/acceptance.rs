//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line to
//! stdout (uncaptured), with its runtime and a short detail.

use std::io::Write;
use std::time::{Duration, Instant};

use fht_core::classifier::{
    classify, classify_lorentz, classify_space, duality_check, zero_location, ClassificationReport, Location,
    ZeroTrichotomy,
};
use fht_core::eigen::WeightW;
use fht_core::fht::{
    eigen_residual, fht_grid, interior_grid, pseudo_inverse_residual, KnownFunction, QuadratureConfig,
};
use fht_core::region::{
    conjugate_exponent, deviation, gamma_of, is_admissible, probe_points, region_membership,
};
use fht_core::spaces::{decreasing_rearrangement, profile_of, LorentzR, SampledFunction};
use fht_core::{
    Attainment, Complex64, FineSpectra, IndexProfile, RegionClass, SpaceSpec, SpectralSet, SpectrumAnswer,
    ZeroLocation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use SpectralSet::*;

const I: Complex64 = Complex64::new(0.0, 1.0);
const TABLE_PS: [f64; 7] = [1.2, 1.5, 1.9, 2.0, 2.5, 3.0, 5.0];
const LORENTZ_RS: [f64; 4] = [1.0, 1.5, 2.0, 4.0];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

struct Verdict {
    id: &'static str,
    passed: bool,
}

fn run(id: &'static str, title: &str, budget: Duration, body: impl FnOnce() -> Outcome) -> Verdict {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let passed = outcome.passed && in_time;
    let timing = if in_time { "" } else { " [over time budget]" };
    let line = format!(
        "{} criterion {id}: {title} ({:.2} s / {:.0} s){timing}: {}\n",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs_f64(),
        outcome.detail,
    );
    let _ = std::io::stdout().write_all(line.as_bytes());
    Verdict { id, passed }
}

fn exact_is(answer: &SpectrumAnswer, want: &SpectralSet) -> bool {
    matches!(answer, SpectrumAnswer::Exact { set } if set.equivalent(want))
}

fn row_matches(f: &FineSpectra, sigma: &SpectralSet, pt: &SpectralSet, r: &SpectralSet, cont: &SpectralSet) -> bool {
    exact_is(&f.spectrum, sigma) && exact_is(&f.point, pt) && exact_is(&f.residual, r) && exact_is(&f.continuous, cont)
}

fn lebesgue_table() -> Outcome {
    let mut bad = Vec::new();
    for p in TABLE_PS {
        let f = classify(&profile_of(&SpaceSpec::Lp { p }).unwrap()).unwrap();
        let ok = if p < 2.0 {
            row_matches(&f, &RegionClosed(p), &RegionInterior(p), &Empty, &RegionBoundary(p))
        } else if p == 2.0 {
            row_matches(&f, &ClosedUnitInterval, &Empty, &Empty, &ClosedUnitInterval)
        } else {
            row_matches(&f, &RegionClosed(p), &Empty, &RegionInterior(p), &RegionBoundary(p))
        };
        if !ok {
            bad.push(format!("p={p}"));
        }
    }
    Outcome::new(bad.is_empty(), format!("{} rows, mismatches {bad:?}", TABLE_PS.len()))
}

fn lorentz_table() -> Outcome {
    let mut bad = Vec::new();
    for p in TABLE_PS {
        for r in LORENTZ_RS {
            let f = classify_lorentz(p, LorentzR::Finite(r)).unwrap();
            let ok = if p < 2.0 {
                row_matches(&f, &RegionClosed(p), &RegionInterior(p), &Empty, &RegionBoundary(p))
            } else if p > 2.0 && r == 1.0 {
                row_matches(&f, &RegionClosed(p), &Empty, &RegionMinusEndpoints(p), &PlusMinusOne)
            } else if p > 2.0 {
                row_matches(&f, &RegionClosed(p), &Empty, &RegionInterior(p), &RegionBoundary(p))
            } else if r == 1.0 {
                row_matches(&f, &ClosedUnitInterval, &Empty, &OpenUnitInterval, &PlusMinusOne)
            } else {
                row_matches(&f, &ClosedUnitInterval, &Empty, &Empty, &ClosedUnitInterval)
            };
            if !ok {
                bad.push(format!("({p},{r})"));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("28 cells, mismatches {bad:?}"))
}

fn equal_boyd(p: f64, pa: bool, qa: bool) -> IndexProfile {
    IndexProfile {
        p_x: p,
        p_attained: Attainment::from_bool(pa),
        q_x: p,
        q_attained: Attainment::from_bool(qa),
        boyd_lower: 1.0 / p,
        boyd_upper: 1.0 / p,
        separable: true,
        interp_l2: false,
    }
}

fn equal_boyd_table() -> Outcome {
    let rows = [
        (1.6, false, false, RegionInterior(1.6), Empty, RegionBoundary(1.6)),
        (1.6, true, false, RegionMinusEndpoints(1.6), Empty, PlusMinusOne),
        (3.5, false, false, Empty, RegionInterior(3.5), RegionBoundary(3.5)),
        (3.5, false, true, Empty, RegionMinusEndpoints(3.5), PlusMinusOne),
        (2.0, true, false, OpenUnitInterval, Empty, PlusMinusOne),
        (2.0, false, true, Empty, OpenUnitInterval, PlusMinusOne),
        (2.0, false, false, Empty, Empty, ClosedUnitInterval),
    ];
    let mut bad = Vec::new();
    for (p, pa, qa, pt, r, cont) in &rows {
        let f = classify(&equal_boyd(*p, *pa, *qa)).unwrap();
        if !row_matches(&f, &RegionClosed(*p), pt, r, cont) {
            bad.push(format!("(p={p}, p attained {pa}, q attained {qa})"));
        }
    }
    Outcome::new(bad.is_empty(), format!("{} rows, mismatches {bad:?}", rows.len()))
}

fn identity_suite() -> Outcome {
    let cfg = QuadratureConfig::chebyshev();
    let grid = interior_grid(50, 0.05);
    let mut worst = [0.0f64; 3];
    let mut failures = Vec::new();
    type Oracle = Box<dyn Fn(f64) -> Complex64>;
    let cases: [(&str, Oracle); 3] = [
        ("T(1/w)", Box::new(|_| c(0.0, 0.0))),
        ("T(w)", Box::new(|t| I * t)),
        ("T(ix/w)", Box::new(|_| c(1.0, 0.0))),
    ];
    for (k, (name, want)) in cases.iter().enumerate() {
        let got = match k {
            0 => fht_grid(&KnownFunction::InverseWeight, &grid, &cfg),
            1 => fht_grid(&WeightW, &grid, &cfg),
            _ => fht_grid(&KnownFunction::IxOverWeight, &grid, &cfg),
        };
        match got {
            Ok(values) => {
                worst[k] = grid
                    .iter()
                    .zip(values)
                    .map(|(&t, v)| (v - want(t)).norm())
                    .fold(0.0, f64::max)
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let passed = failures.is_empty() && worst.iter().all(|&w| w <= 1e-6);
    Outcome::new(
        passed,
        format!(
            "max errors T(1/w) {:.1e}, T(w) {:.1e}, T(ix/w) {:.1e}{}",
            worst[0],
            worst[1],
            worst[2],
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") }
        ),
    )
}

fn eigen_lambdas() -> Vec<Complex64> {
    vec![
        c(0.0, 0.0),
        c(0.5, 0.0),
        c(-0.5, 0.0),
        c(0.0, 0.2),
        c(0.0, -0.2),
        c(0.3, 0.1),
        c(-0.3, 0.1),
        c(0.3, -0.1),
        c(-0.3, -0.1),
        c(0.8, 0.0),
        c(-0.8, 0.0),
        c(0.1, 0.4),
    ]
}

fn eigen_equation() -> Outcome {
    let lambdas = eigen_lambdas();
    if let Some(l) = lambdas
        .iter()
        .find(|&&l| region_membership(l, 1.5).unwrap() != RegionClass::Interior)
    {
        return Outcome::new(false, format!("sample λ = {l} is not interior to the p = 1.5 region"));
    }
    let cfg = QuadratureConfig::chebyshev();
    let half = cfg.with_tol(cfg.tol / 2.0);
    let grid = interior_grid(20, cfg.endpoint_margin);
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for &l in &lambdas {
        let (full, halved) = match (eigen_residual(l, &grid, &cfg), eigen_residual(l, &grid, &half)) {
            (Ok(a), Ok(b)) => (a.max_residual, b.max_residual),
            (Err(e), _) | (_, Err(e)) => {
                problems.push(format!("λ={l}: {e}"));
                continue;
            }
        };
        worst = worst.max(full);
        if full > 1e-6 {
            problems.push(format!("λ={l}: residual {full:.2e}"));
        }
        if halved > (full / 2.0).max(1e-12) {
            problems.push(format!("λ={l}: halving tol gave {full:.2e} → {halved:.2e}"));
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!("{} values, max residual {worst:.2e}; {problems:?}", lambdas.len()),
    )
}

fn pseudo_inverse() -> Outcome {
    let cfg = QuadratureConfig::chebyshev();
    let grid = interior_grid(20, cfg.endpoint_margin);
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for lambda in [0.0, 0.5, -0.5] {
        let g = move |x: f64| fht_core::eigen::g_lambda(lambda, x).unwrap();
        match pseudo_inverse_residual(c(lambda, 0.0), &g, &grid, &cfg) {
            Ok(report) => {
                worst = worst.max(report.max_residual);
                if report.max_residual > 1e-5 {
                    problems.push(format!("λ={lambda}: {:.2e}", report.max_residual));
                }
            }
            Err(e) => problems.push(format!("λ={lambda}: {e}")),
        }
    }
    Outcome::new(problems.is_empty(), format!("max residual {worst:.2e}; {problems:?}"))
}

const SAMPLES: usize = 10_000;

fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
    match rng.gen_range(0..6) {
        0 => c(rng.gen_range(-1.5..1.5), 0.0),
        1 => c(if rng.gen() { 1.0 } else { -1.0 }, 0.0),
        2 => c(rng.gen_range(-1.0..1.0), rng.gen_range(-0.05..0.05)),
        _ => c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
    }
}

fn random_exponent(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..4) {
        0 => 2.0,
        1 => TABLE_PS[rng.gen_range(0..TABLE_PS.len())],
        _ => 1.0 + rng.gen_range(0.01..9.0f64),
    }
}

/// Valid separable profile with known attainment, with 1/p_x, 1/q_x pinned
/// to 1/2 or to each other often enough to exercise every branch.
fn random_profile(rng: &mut ChaCha8Rng) -> IndexProfile {
    let bl: f64 = rng.gen_range(0.05..0.95);
    let bu = (bl + rng.gen_range(0.0..0.9)).min(0.95);
    let mut inv_p = bl + rng.gen::<f64>() * (bu - bl);
    let mut inv_q = inv_p + rng.gen::<f64>() * (bu - inv_p);
    match rng.gen_range(0..4) {
        0 if bl <= 0.5 && 0.5 <= bu => {
            inv_p = 0.5;
            inv_q = inv_q.max(0.5);
        }
        1 if inv_p <= 0.5 && 0.5 <= bu => inv_q = 0.5,
        2 => inv_q = inv_p,
        _ => {}
    }
    let pa = rng.gen::<bool>();
    let qa = rng.gen::<bool>() && !(inv_p == inv_q && pa);
    IndexProfile {
        p_x: 1.0 / inv_p,
        p_attained: Attainment::from_bool(pa),
        q_x: 1.0 / inv_q,
        q_attained: Attainment::from_bool(qa),
        boyd_lower: bl,
        boyd_upper: bu,
        separable: true,
        interp_l2: rng.gen(),
    }
}

fn closed_region_contains(lambda: Complex64, p: f64) -> bool {
    region_membership(lambda, p).unwrap() != RegionClass::Exterior
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f17e);
    let mut failures: Vec<(&str, usize)> = Vec::new();
    let mut check = |name: &'static str, body: &mut dyn FnMut(&mut ChaCha8Rng) -> bool, rng: &mut ChaCha8Rng| {
        let bad = (0..SAMPLES).filter(|_| !body(rng)).count();
        if bad > 0 {
            failures.push((name, bad));
        }
    };

    check(
        "region symmetry",
        &mut |rng| {
            let (l, p) = (random_point(rng), random_exponent(rng));
            let here = region_membership(l, p).unwrap();
            here == region_membership(-l, p).unwrap() && here == region_membership(l.conj(), p).unwrap()
        },
        &mut rng,
    );
    check(
        "conjugate exponent",
        &mut |rng| {
            let (l, p) = (random_point(rng), random_exponent(rng));
            region_membership(l, p).unwrap() == region_membership(l, conjugate_exponent(p)).unwrap()
        },
        &mut rng,
    );
    check(
        "monotonicity",
        &mut |rng| {
            let l = random_point(rng);
            let (a, b) = (random_exponent(rng), random_exponent(rng));
            let (small, large) = if deviation(a) <= deviation(b) { (a, b) } else { (b, a) };
            !closed_region_contains(l, small) || closed_region_contains(l, large)
        },
        &mut rng,
    );
    check(
        "γ balanced",
        &mut |rng| {
            let l = random_point(rng);
            let alpha: f64 = rng.gen_range(-1.0..=1.0);
            if !is_admissible(l) {
                return true;
            }
            gamma_of(l * alpha).unwrap() >= gamma_of(l).unwrap() - 1e-12
        },
        &mut rng,
    );
    check(
        "ℝ-balanced parts",
        &mut |rng| {
            let f = classify(&random_profile(rng)).unwrap();
            let l = random_point(rng);
            let alpha: f64 = rng.gen_range(-1.0..=1.0);
            [&f.point, &f.residual]
                .iter()
                .filter(|part| part.is_exact())
                .all(|part| !part.lower().contains(l).unwrap() || part.lower().contains(l * alpha).unwrap())
        },
        &mut rng,
    );
    check(
        "zero trichotomy",
        &mut |rng| {
            let pr = random_profile(rng);
            let f = classify(&pr).unwrap();
            let zero = c(0.0, 0.0);
            let holders = [&f.point, &f.residual, &f.continuous]
                .iter()
                .filter(|part| part.lower().contains(zero).unwrap())
                .count();
            let want = match zero_location(&pr).unwrap() {
                ZeroTrichotomy::PointBranch => (ZeroLocation::Point, Location::Point),
                ZeroTrichotomy::ResidualBranch => (ZeroLocation::Residual, Location::Residual),
                ZeroTrichotomy::ContinuousBranch => (ZeroLocation::Continuous, Location::Continuous),
            };
            holders == 1 && f.zero_location == want.0 && f.locate(zero).unwrap() == want.1
        },
        &mut rng,
    );
    check(
        "Lorentz duality",
        &mut |rng| {
            let (p, r) = if rng.gen_bool(0.3) {
                (TABLE_PS[rng.gen_range(0..7)], LORENTZ_RS[rng.gen_range(0..4)])
            } else {
                (1.0 + rng.gen_range(0.01..9.0f64), if rng.gen() { 1.0 } else { rng.gen_range(1.0..10.0) })
            };
            let pr = profile_of(&SpaceSpec::Lorentz { p, r: LorentzR::Finite(r) }).unwrap();
            duality_check(&pr).unwrap()
        },
        &mut rng,
    );
    check(
        "disjoint cover",
        &mut |rng| {
            let f = classify(&random_profile(rng)).unwrap();
            if !f.is_exact() {
                return true;
            }
            let l = random_point(rng);
            let holders = [&f.point, &f.residual, &f.continuous]
                .iter()
                .filter(|part| part.lower().contains(l).unwrap())
                .count();
            holders == usize::from(f.spectrum.lower().contains(l).unwrap())
        },
        &mut rng,
    );

    Outcome::new(
        failures.is_empty(),
        format!("8 suites × {SAMPLES} samples, failures {failures:?}"),
    )
}

/// Largest relative deviation of `f*` from `model` on the sample window.
fn relative_gap(step: &fht_core::spaces::RearrangementStep, model: impl Fn(f64) -> f64) -> f64 {
    sample_window()
        .map(|t| (step.eval(t) - model(t)).abs() / model(t))
        .fold(0.0, f64::max)
}

fn sample_window() -> impl Iterator<Item = f64> {
    (0..=400).map(|k| 0.01 + (1.9 - 0.01) * k as f64 / 400.0)
}

struct RearrangementFindings {
    literal_gap: f64,
    exact_gap: f64,
    sandwich: Vec<(Complex64, f64, f64)>,
}

fn rearrangement_findings() -> RearrangementFindings {
    let n = 100_000;
    let inv_w = SampledFunction::midpoint(|x| c(1.0 / WeightW.eval(x), 0.0), n).unwrap();
    let step = decreasing_rearrangement(&inv_w).unwrap();
    let literal_gap = relative_gap(&step, |t| 2.0 / t.sqrt());
    let exact_gap = relative_gap(&step, |t| 1.0 / (t * (1.0 - t / 4.0)).sqrt());

    let sandwich = [c(0.0, 0.0), c(0.0, 0.5)]
        .into_iter()
        .map(|l| {
            let xi = fht_core::eigen::EigenFunction::new(l).unwrap();
            let sampled = SampledFunction::midpoint(|x| xi.eval(x).unwrap(), n).unwrap();
            let step = decreasing_rearrangement(&sampled).unwrap();
            let exponent = fht_core::eigen::rearrangement_exponent(l).unwrap();
            let scaled: Vec<f64> = sample_window().map(|t| t.powf(exponent) * step.eval(t)).collect();
            let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = scaled.iter().cloned().fold(0.0, f64::max);
            (l, lo, hi)
        })
        .collect();
    RearrangementFindings {
        literal_gap,
        exact_gap,
        sandwich,
    }
}

fn bounds_coherence() -> Outcome {
    let profile = IndexProfile {
        p_x: 3.0,
        p_attained: Attainment::NotAttained,
        q_x: 2.5,
        q_attained: Attainment::NotAttained,
        boyd_lower: 0.3,
        boyd_upper: 0.6,
        separable: true,
        interp_l2: false,
    };
    let f = classify_space(&SpaceSpec::Abstract(profile)).unwrap();
    let pts = probe_points(20_000);
    let nested = f
        .parts()
        .iter()
        .all(|part| part.lower().sampled_subset_of(part.upper(), &pts));
    let residual = exact_is(&f.residual, &RegionInterior(2.5))
        && f.residual.lower().sampled_equal(&RegionInterior(2.5), &pts);
    let code = ClassificationReport::new(None, profile, f).exit_code();
    Outcome::new(
        nested && residual && code == 2,
        format!("lower ⊆ upper on {} probes: {nested}; residual = int R_2.5: {residual}; exit code {code}", pts.len()),
    )
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut verdicts = vec![
        run("1", "L^p table", secs(1), lebesgue_table),
        run("2", "Lorentz table", secs(1), lorentz_table),
        run("3", "equal-Boyd table", secs(1), equal_boyd_table),
        run("4", "identity suite", secs(10), identity_suite),
        run("5", "eigen-equation residuals", secs(60), eigen_equation),
        run("6", "pseudo-inverse residuals", secs(30), pseudo_inverse),
        run("7", "randomized property suites", secs(60), property_suites),
    ];

    let mut findings = None;
    verdicts.push(run("8", "rearrangement oracle", secs(30), || {
        let r = rearrangement_findings();
        let literal_ok = r.literal_gap <= 0.02;
        let sandwich_ok = r.sandwich.iter().all(|&(_, lo, hi)| lo > 0.0 && hi.is_finite() && hi / lo <= 10.0);
        let detail = format!(
            "1/w* vs 2/t^(1/2): max rel gap {:.3} (limit 0.02); vs 1/(t(1-t/4))^(1/2): {:.2e}; sandwich C/c {}",
            r.literal_gap,
            r.exact_gap,
            r.sandwich
                .iter()
                .map(|(l, lo, hi)| format!("λ={l}: {:.3}", hi / lo))
                .collect::<Vec<_>>()
                .join(", "),
        );
        findings = Some((sandwich_ok, r.exact_gap));
        Outcome::new(literal_ok && sandwich_ok, detail)
    }));
    verdicts.push(run("9", "bounds coherence", secs(1), bounds_coherence));

    // Criterion 8 compares against a closed form for (1/w)* that is off by a
    // factor approaching 2 near t = 0; its FAIL line is expected. The
    // computed rearrangement itself must match the correct closed form and
    // the sandwich half must hold.
    let (sandwich_ok, exact_gap) = findings.expect("criterion 8 ran");
    assert!(sandwich_ok, "rearrangement sandwich failed");
    assert!(exact_gap <= 0.02, "rearrangement of 1/w is off the exact closed form by {exact_gap}");

    let unexpected: Vec<_> = verdicts
        .iter()
        .filter(|v| !v.passed && v.id != "8")
        .map(|v| v.id)
        .collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
}
