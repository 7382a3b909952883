//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::{LN_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stw_core::formal_group::{
    exp_minus_one, formal_exponential, formal_logarithm, group_law_bb, group_law_exp_log, s_expansion,
    universal_bernoulli, universal_bernoulli_of, verify_axioms, wp_pullback, xy_from_s, FormalLog,
};
use stw_core::lseries::{eta_partial_sum, honda_check};
use stw_core::numeric::Parametrization;
use stw_core::series::{int, ratio, LaurentSeries, Rational};
use stw_core::weierstrass::{wp_coefficients, wp_laurent, wp_prime_laurent};
use stw_core::{BiSeries, Curve, UniSeries};

const SEED: u64 = 0x5eed_2024;

const DEGENERATE_ORDER: usize = 30;
const DEGENERATE_BUDGET: Duration = Duration::from_secs(1);

const BERNOULLI_BUDGET: Duration = Duration::from_secs(1);

const RANDOM_CURVES: usize = 20;
const INVARIANT_BOUND: i64 = 20;
const ODE_ORDER: i64 = 40;
const ODE_BUDGET: Duration = Duration::from_secs(10);

const ROUND_TRIP_ORDER: usize = 40;

const LAW_CURVES: usize = 10;
const LAW_DEGREE: usize = 10;
const LAW_BUDGET: Duration = Duration::from_secs(60);

const PULLBACK_CURVES: usize = 10;
const PULLBACK_ORDER: usize = 30;

const HONDA_PMAX: u64 = 97;
const HONDA_RANDOM_CURVES: usize = 10;
const HONDA_RANDOM_PMAX: u64 = 50;
const HONDA_BUDGET: Duration = Duration::from_secs(30);

const RELATION_CURVES: usize = 10;

const PARAM_NMAX: usize = 50;
const PARAM_WP_TERMS: usize = 20;
const PARAM_RESIDUAL: f64 = 1e-9;
const DERIVATIVE_STEP: f64 = 1e-4;
const DERIVATIVE_DEVIATION: f64 = 1e-6;
/// Halving `h` should divide an O(h²) error by about 4.
const DERIVATIVE_RATIO: std::ops::Range<f64> = 3.5..4.5;
const PARAM_BUDGET: Duration = Duration::from_secs(1);

const ETA_LN2_TERMS: u64 = 1_000_000;
const ETA_LN2_TOLERANCE: f64 = 1e-6;
const ETA_ZETA2_TERMS: u64 = 10_000;
const ETA_ZETA2_TOLERANCE: f64 = 1e-4;
const ETA_BUDGET: Duration = Duration::from_secs(5);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=4);
    ratio(rng.gen_range(-INVARIANT_BOUND * d..=INVARIANT_BOUND * d), d)
}

/// Nonsingular curves with rational `|g2|, |g3| <= 20`.
fn random_curves(rng: &mut ChaCha8Rng, count: usize) -> Vec<Curve> {
    let mut curves = Vec::with_capacity(count);
    while curves.len() < count {
        if let Ok(c) = Curve::new(random_rational(rng), random_rational(rng)) {
            curves.push(c);
        }
    }
    curves
}

fn random_integer_curves(rng: &mut ChaCha8Rng, count: usize) -> Vec<Curve> {
    let mut curves = Vec::with_capacity(count);
    while curves.len() < count {
        let g2 = rng.gen_range(-INVARIANT_BOUND..=INVARIANT_BOUND);
        let g3 = rng.gen_range(-INVARIANT_BOUND..=INVARIANT_BOUND);
        if let Ok(c) = Curve::from_integers(g2, g3) {
            curves.push(c);
        }
    }
    curves
}

fn logarithm(curve: &Curve, order: usize) -> FormalLog {
    formal_logarithm(&formal_exponential(curve, order).unwrap()).unwrap()
}

fn degenerate_curve() -> Outcome {
    let curve = Curve::formal(int(0), int(0));
    let fe = formal_exponential(&curve, DEGENERATE_ORDER).unwrap();
    let fl = formal_logarithm(&fe).unwrap();
    let t = UniSeries::var(DEGENERATE_ORDER);
    let sum = BiSeries::t1(DEGENERATE_ORDER).checked_add(&BiSeries::t2(DEGENERATE_ORDER)).unwrap();
    let exp_log = group_law_exp_log(&fe, &fl, DEGENERATE_ORDER).unwrap();
    let bb = group_law_bb(&curve, DEGENERATE_ORDER).unwrap();
    let ok = fe.series == t && fl.series == t && exp_log.series == sum && bb.series == sum;
    outcome(ok, format!("f_E = f_L = T and F = t1 + t2 at order {DEGENERATE_ORDER}: {ok}"))
}

fn classical_bernoulli() -> Outcome {
    let expected = [
        ratio(1, 1),
        ratio(-1, 2),
        ratio(1, 6),
        int(0),
        ratio(-1, 30),
        int(0),
        ratio(1, 42),
        int(0),
        ratio(-1, 30),
        int(0),
        ratio(5, 66),
        int(0),
        ratio(-691, 2730),
    ];
    let got = universal_bernoulli_of(&exp_minus_one(13), 12).unwrap();
    let ok = got == expected;
    outcome(ok, format!("B_0..B_12 from e^T - 1 exact: {ok}"))
}

fn differential_equation(curves: &[Curve]) -> Outcome {
    // The residual keeps precision 2N - 8 with N coefficients.
    let n = (ODE_ORDER as usize + 8).div_ceil(2);
    let mut failures = 0;
    for curve in curves {
        let p = wp_laurent(curve, n).unwrap();
        let dp = wp_prime_laurent(curve, n).unwrap();
        let rhs = p
            .pow(3)
            .scale(&int(4))
            .sub(&p.scale(curve.g2()))
            .sub(&LaurentSeries::from_series(&UniSeries::monomial(curve.g3().clone(), 0, n * 2)));
        let diff = dp.mul(&dp).sub(&rhs);
        if !(diff.is_zero() && diff.precision() >= ODE_ORDER) {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("(℘')² = 4℘³ - g2℘ - g3 to order {ODE_ORDER}: {failures}/{} curves fail", curves.len()),
    )
}

fn round_trip(curves: &[Curve]) -> Outcome {
    let t = UniSeries::var(ROUND_TRIP_ORDER);
    let mut failures = 0;
    for curve in curves {
        let fe = formal_exponential(curve, ROUND_TRIP_ORDER).unwrap();
        let fl = formal_logarithm(&fe).unwrap();
        if fe.series.compose(&fl.series).unwrap() != t || fl.series.compose(&fe.series).unwrap() != t {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("f_E∘f_L = f_L∘f_E = T to order {ROUND_TRIP_ORDER}: {failures}/{} curves fail", curves.len()),
    )
}

fn constructor_equivalence(curves: &[Curve]) -> Outcome {
    let mut failures = 0;
    for curve in curves {
        let fe = formal_exponential(curve, LAW_DEGREE).unwrap();
        let fl = formal_logarithm(&fe).unwrap();
        let exp_log = group_law_exp_log(&fe, &fl, LAW_DEGREE).unwrap();
        let bb = group_law_bb(curve, LAW_DEGREE).unwrap();
        let ok = exp_log.series == bb.series && verify_axioms(&exp_log).passed() && verify_axioms(&bb).passed();
        if !ok {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!(
            "both group laws agree and satisfy the axioms at degree {LAW_DEGREE}: {failures}/{} curves fail",
            curves.len()
        ),
    )
}

fn wp_composition(curves: &[Curve]) -> Outcome {
    let mut failures = 0;
    for curve in curves {
        let fl = logarithm(curve, PULLBACK_ORDER + 4);
        let (x, y) = wp_pullback(curve, &fl, PULLBACK_ORDER).unwrap();
        let s = s_expansion(curve, PULLBACK_ORDER + 6).unwrap();
        let (t_over_s, minus_two_over_s) = xy_from_s(&s, PULLBACK_ORDER).unwrap();
        if x != t_over_s || y != minus_two_over_s {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("℘∘f_L = t/s and ℘'∘f_L = -2/s to order {PULLBACK_ORDER}: {failures}/{} curves fail", curves.len()),
    )
}

fn honda(curves: &[Curve]) -> Outcome {
    let lemniscatic = Curve::from_integers(4, 0).unwrap();
    let report = honda_check(&lemniscatic, HONDA_PMAX, &logarithm(&lemniscatic, HONDA_PMAX as usize)).unwrap();
    let entry = |p: u64| report.entries.iter().find(|e| e.p == p).unwrap();
    let spot =
        entry(5).a_p == int(-2) && entry(5).trace == Some(-2) && entry(7).a_p == int(0) && entry(7).trace == Some(0);
    let checked = report.checked().count();
    let mut failures = 0;
    for curve in curves {
        let fl = logarithm(curve, HONDA_RANDOM_PMAX as usize);
        if !honda_check(curve, HONDA_RANDOM_PMAX, &fl).unwrap().all_congruent() {
            failures += 1;
        }
    }
    let ok = report.all_congruent() && spot && failures == 0;
    outcome(
        ok,
        format!(
            "g2 = 4: {checked} good primes <= {HONDA_PMAX} congruent = {}, a(5) = -2 and a(7) = 0: {spot}; \
             random curves to {HONDA_RANDOM_PMAX}: {failures}/{} fail",
            report.all_congruent(),
            curves.len()
        ),
    )
}

fn bernoulli_relations(curves: &[Curve]) -> Outcome {
    let mut failures = 0;
    for curve in curves {
        let b = universal_bernoulli(&formal_exponential(curve, 7).unwrap(), 6).unwrap();
        let wp = wp_coefficients(curve, 3).unwrap();
        let ok =
            b[4] == wp.bernoulli_hurwitz(4).unwrap() * int(-6) && b[6] == wp.bernoulli_hurwitz(6).unwrap() * int(-15);
        if !ok {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("B̂_4 = -6 BH_4 and B̂_6 = -15 BH_6: {failures}/{} curves fail", curves.len()))
}

fn parametrization_residual(fl: &FormalLog) -> Outcome {
    let curve = Curve::from_integers(4, 0).unwrap();
    let par = Parametrization::<f64>::new(&curve, fl, PARAM_NMAX, PARAM_WP_TERMS).unwrap();
    let mut worst: f64 = 0.0;
    let mut detail = Vec::new();
    for z in [Complex::new(0.0, 1.0), Complex::new(0.3, 0.9)] {
        let p = par.point(z).unwrap();
        worst = worst.max(p.residual);
        detail.push(format!(
            "z = {z}: |β² - 4α³ + g2α + g3| = {:.3e} (relative {:.1e})",
            p.residual, p.relative_residual
        ));
    }
    outcome(worst < PARAM_RESIDUAL, format!("{} [bound {PARAM_RESIDUAL:e}]", detail.join(", ")))
}

fn parametrization_derivative(fl: &FormalLog) -> Outcome {
    let curve = Curve::from_integers(4, 0).unwrap();
    let par = Parametrization::<f64>::new(&curve, fl, PARAM_NMAX, PARAM_WP_TERMS).unwrap();
    let z = Complex::new(0.0, 1.0);
    let d1 = par.derivative_check(z, DERIVATIVE_STEP).unwrap();
    let d2 = par.derivative_check(z, DERIVATIVE_STEP / 2.0).unwrap();
    let ratio = d1.relative_deviation / d2.relative_deviation;
    let ok = d1.relative_deviation < DERIVATIVE_DEVIATION && DERIVATIVE_RATIO.contains(&ratio);
    outcome(
        ok,
        format!(
            "relative deviation {:.3e} at h = {DERIVATIVE_STEP:e}, halving ratio {ratio:.3}",
            d1.relative_deviation
        ),
    )
}

fn eta_demo() -> Outcome {
    let ln2 = (eta_partial_sum(1, ETA_LN2_TERMS) - LN_2).abs();
    let zeta2 = (eta_partial_sum(2, ETA_ZETA2_TERMS) - PI * PI / 12.0).abs();
    let ok = ln2 < ETA_LN2_TOLERANCE && zeta2 < ETA_ZETA2_TOLERANCE;
    outcome(ok, format!("|η(1) - ln 2| = {ln2:.3e}, |η(2) - π²/12| = {zeta2:.3e}"))
}

struct Suite {
    failed: usize,
}

impl Suite {
    fn run(&mut self, id: &str, name: &str, budget: Option<Duration>, check: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed < b);
        let passed = result.passed && in_time;
        if !passed {
            self.failed += 1;
        }
        let timing = match budget {
            Some(b) => format!("{:.3}s of {:.0}s", elapsed.as_secs_f64(), b.as_secs_f64()),
            None => format!("{:.3}s", elapsed.as_secs_f64()),
        };
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("{verdict} [{id}] {name}: {} ({timing})", result.detail);
    }
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let curves = random_curves(&mut rng, RANDOM_CURVES);
    let law_curves = random_curves(&mut rng, LAW_CURVES);
    let pullback_curves = random_curves(&mut rng, PULLBACK_CURVES);
    let honda_curves = random_integer_curves(&mut rng, HONDA_RANDOM_CURVES);
    let relation_curves = random_curves(&mut rng, RELATION_CURVES);
    let lemniscatic_log = logarithm(&Curve::from_integers(4, 0).unwrap(), PARAM_NMAX);

    let mut suite = Suite { failed: 0 };
    suite.run("1", "degenerate curve", Some(DEGENERATE_BUDGET), degenerate_curve);
    suite.run("2", "classical Bernoulli numbers", Some(BERNOULLI_BUDGET), classical_bernoulli);
    suite.run("3", "differential equation", Some(ODE_BUDGET), || differential_equation(&curves));
    suite.run("4", "exp/log round trip", None, || round_trip(&curves));
    suite.run("5", "group law constructions", Some(LAW_BUDGET), || constructor_equivalence(&law_curves));
    suite.run("6", "℘ composition identities", None, || wp_composition(&pullback_curves));
    suite.run("7", "Honda congruence", Some(HONDA_BUDGET), || honda(&honda_curves));
    suite.run("8", "Bernoulli cross-relations", None, || bernoulli_relations(&relation_curves));
    suite.run("9a", "parametrization residual", Some(PARAM_BUDGET), || parametrization_residual(&lemniscatic_log));
    suite.run("9b", "parametrization derivative", Some(PARAM_BUDGET), || parametrization_derivative(&lemniscatic_log));
    suite.run("10", "η partial sums", Some(ETA_BUDGET), eta_demo);

    println!("acceptance: {} failed", suite.failed);
    if suite.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
