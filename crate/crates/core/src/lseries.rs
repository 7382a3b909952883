//! L-series coefficients from the formal logarithm, and their comparison with
//! point counts over prime fields.
//!
//! Honda's correspondence is checked in its desk-scale form: for a prime
//! `p >= 5` of good reduction, `a(p) ≡ p + 1 - #E(F_p) (mod p)`. Reduction
//! uses the short model `(y/2)^2 = x^3 - (g2/4) x - (g3/4)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formal_group::{classical_bernoulli, exp_minus_one, FormalLog};
use crate::series::{int, Rational};
use crate::weierstrass::Curve;

/// Largest prime accepted by the exhaustive point counter.
pub const POINT_COUNT_CAP: u64 = 1_000_000;

/// `[a(1), ..., a(nmax)]` with `a(n) = n [T^n] f_L`.
pub fn extract_an(fl: &FormalLog, nmax: usize) -> Result<Vec<Rational>> {
    if nmax > fl.order() {
        return Err(Error::OrderTooLow { needed: nmax, available: fl.order() });
    }
    Ok(fl.an()[..nmax].to_vec())
}

/// `Y^2 = X^3 + a X + b` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducedCurve {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkipReason {
    /// 2 and 3 are never treated with this model.
    ExcludedPrime,
    BadReduction,
    /// `p` divides a denominator of `g2/4` or `g3/4`.
    DenominatorDivisible,
    /// The formal coefficient `a(p)` is not `p`-integral.
    NonIntegralCoefficient,
}

impl SkipReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::ExcludedPrime => "excluded prime",
            SkipReason::BadReduction => "bad reduction",
            SkipReason::DenominatorDivisible => "denominator divisible by p",
            SkipReason::NonIntegralCoefficient => "a(p) not p-integral",
        }
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Good(ReducedCurve),
    Skip(SkipReason),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for k in 2..=n {
        if sieve[k] {
            out.push(k as u64);
            for m in (k * k..=n).step_by(k) {
                sieve[m] = false;
            }
        }
    }
    out
}

/// `x mod p` for a rational whose denominator is prime to `p`.
fn rational_mod(x: &Rational, p: u64) -> Option<u64> {
    let p_big = BigInt::from(p);
    let den = x.denom().mod_floor(&p_big);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&p_big).to_u64()?;
    let den = den.to_u64()?;
    Some(num * mod_pow(den, p - 2, p) % p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduces the short model `(y/2)^2 = x^3 - (g2/4) x - (g3/4)` mod `p`.
pub fn reduce_curve(curve: &Curve, p: u64) -> Result<Reduction> {
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > POINT_COUNT_CAP {
        return Err(Error::PrimeTooLarge { p, cap: POINT_COUNT_CAP });
    }
    let (Some(a), Some(b)) = (rational_mod(&(curve.g2() / int(-4)), p), rational_mod(&(curve.g3() / int(-4)), p))
    else {
        return Ok(Reduction::Skip(SkipReason::DenominatorDivisible));
    };
    let disc = (4 * mod_pow(a, 3, p) + 27 * (b * b % p)) % p;
    if disc == 0 {
        return Ok(Reduction::Skip(SkipReason::BadReduction));
    }
    Ok(Reduction::Good(ReducedCurve { p, a, b }))
}

/// `#E(F_p)` including the point at infinity, by enumerating `x` against a
/// table of square counts.
pub fn count_points(rc: &ReducedCurve) -> u64 {
    let p = rc.p;
    let mut roots = vec![0u64; p as usize];
    for y in 0..p {
        roots[(y * y % p) as usize] += 1;
    }
    let mut total = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + rc.a * x + rc.b) % p;
        total += roots[rhs as usize];
    }
    total
}

/// `p + 1 - #E(F_p)`.
pub fn frobenius_trace(rc: &ReducedCurve) -> i64 {
    rc.p as i64 + 1 - count_points(rc) as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HondaEntry {
    pub p: u64,
    /// `p + 1 - #E(F_p)`, only for good reduction.
    pub trace: Option<i64>,
    pub a_p: Rational,
    pub congruent: bool,
    /// `a(p)` equals the trace as an integer, not just mod `p`.
    pub exact: bool,
    pub skipped: Option<SkipReason>,
}

/// Per-prime Honda verdicts, sorted by `p`; every prime up to `pmax`
/// appears exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HondaReport {
    pub curve: Curve,
    pub pmax: u64,
    pub entries: Vec<HondaEntry>,
}

impl HondaReport {
    /// Entries that were actually compared.
    pub fn checked(&self) -> impl Iterator<Item = &HondaEntry> {
        self.entries.iter().filter(|e| e.skipped.is_none())
    }

    pub fn all_congruent(&self) -> bool {
        self.checked().all(|e| e.congruent)
    }
}

/// Compares `a(p)` from `f_L` with the trace of Frobenius for every prime
/// `p <= pmax`.
pub fn honda_check(curve: &Curve, pmax: u64, fl: &FormalLog) -> Result<HondaReport> {
    if curve.is_singular() {
        return Err(Error::SingularCurve);
    }
    if pmax as usize > fl.order() {
        return Err(Error::OrderTooLow { needed: pmax as usize, available: fl.order() });
    }
    let mut entries = Vec::new();
    for p in primes_up_to(pmax) {
        let a_p = fl.a(p as usize).expect("p <= order").clone();
        let mut entry = HondaEntry { p, trace: None, a_p: a_p.clone(), congruent: false, exact: false, skipped: None };
        let reduction = if p < 5 { Reduction::Skip(SkipReason::ExcludedPrime) } else { reduce_curve(curve, p)? };
        match reduction {
            Reduction::Skip(reason) => entry.skipped = Some(reason),
            Reduction::Good(rc) => {
                let trace = frobenius_trace(&rc);
                entry.trace = Some(trace);
                match rational_mod(&a_p, p) {
                    None => entry.skipped = Some(SkipReason::NonIntegralCoefficient),
                    Some(r) => {
                        entry.congruent = r == trace.rem_euclid(p as i64) as u64;
                        entry.exact = a_p == int(trace);
                    }
                }
            }
        }
        entries.push(entry);
    }
    Ok(HondaReport { curve: curve.clone(), pmax, entries })
}

/// Order of the `e^T - 1` reversion in [`classical_demo`].
pub const CLASSICAL_SERIES_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct EtaEntry {
    pub s: u32,
    pub terms: u64,
    pub partial_sum: f64,
    /// `(1 - 2^(1-s)) ζ(s)`; `ln 2` at `s = 1`.
    pub reference: f64,
    pub abs_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalReport {
    pub series_order: usize,
    /// `a(n)` read off the reversion of `e^T - 1`.
    pub an: Vec<Rational>,
    /// Whether `a(n) = (-1)^(n-1)` for every extracted `n`.
    pub log_coefficients_match: bool,
    pub eta: Vec<EtaEntry>,
}

/// Degenerate case `f_E = e^T - 1`: the logarithm is `log(1 + T)`, so
/// `a(n) = (-1)^(n-1)` and the L-series is the Dirichlet eta function.
pub fn classical_demo(nmax: u64, s_values: &[u32]) -> Result<ClassicalReport> {
    classical_demo_with_order(CLASSICAL_SERIES_ORDER.min(nmax as usize), nmax, s_values)
}

pub fn classical_demo_with_order(series_order: usize, nmax: u64, s_values: &[u32]) -> Result<ClassicalReport> {
    if nmax == 0 || series_order == 0 {
        return Err(Error::Domain("classical demo needs nmax >= 1 and order >= 1".into()));
    }
    if let Some(&s) = s_values.iter().find(|&&s| s == 0) {
        return Err(Error::Domain(format!("eta(s) is only tabulated for s >= 1, got {s}")));
    }
    let log = exp_minus_one(series_order).reverse()?;
    let an: Vec<Rational> = (1..=series_order).map(|n| &log[n] * int(n as i64)).collect();
    let log_coefficients_match = an.iter().enumerate().all(|(i, a)| *a == int(if i % 2 == 0 { 1 } else { -1 }));
    let eta = s_values
        .iter()
        .map(|&s| {
            let partial_sum = eta_partial_sum(s, nmax);
            let reference = eta_reference(s);
            EtaEntry { s, terms: nmax, partial_sum, reference, abs_error: (partial_sum - reference).abs() }
        })
        .collect();
    Ok(ClassicalReport { series_order, an, log_coefficients_match, eta })
}

/// `Σ_{n<=nmax} (-1)^(n-1) / n^s`, summed from the small end of the
/// magnitudes upward.
pub fn eta_partial_sum(s: u32, nmax: u64) -> f64 {
    let mut acc = 0.0;
    for n in (1..=nmax).rev() {
        let term = (n as f64).powi(s as i32).recip();
        if n % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `(1 - 2^(1-s)) ζ(s)` for `s >= 1`: `ln 2` at `s = 1`, the Bernoulli-number
/// formula for `ζ(2k)`, and Borwein's accelerated alternating sum otherwise.
pub fn eta_reference(s: u32) -> f64 {
    match s {
        0 => 0.5,
        1 => std::f64::consts::LN_2,
        s if s % 2 == 0 => {
            let k = (s / 2) as i32;
            let b = classical_bernoulli(s as usize)[s as usize].clone();
            let b = b.numer().to_f64().unwrap_or(f64::NAN) / b.denom().to_f64().unwrap_or(f64::NAN);
            let fact: f64 = (1..=s).map(f64::from).product();
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let zeta = sign * b * (2.0 * std::f64::consts::PI).powi(s as i32) / (2.0 * fact);
            (1.0 - 2f64.powi(1 - s as i32)) * zeta
        }
        s => borwein_eta(s),
    }
}

fn borwein_eta(s: u32) -> f64 {
    const N: usize = 30;
    let n = N as f64;
    // d_k = n Σ_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(N + 1);
    let mut term = 1.0 / n; // i = 0: (n-1)!/n! = 1/n
    let mut acc = 0.0;
    for i in 0..=N {
        if i > 0 {
            let i_f = i as f64;
            term *= (n + i_f - 1.0) * (n - i_f + 1.0) * 4.0 / ((2.0 * i_f - 1.0) * (2.0 * i_f));
        }
        acc += term;
        d.push(n * acc);
    }
    let dn = d[N];
    let sum: f64 = (0..N)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * (d[k] - dn) / ((k + 1) as f64).powi(s as i32)
        })
        .sum();
    -sum / dn
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::formal_group::{formal_exponential, formal_logarithm};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn honda_congruence_on_integer_curves(g2 in -20i64..=20, g3 in -20i64..=20) {
            let Ok(curve) = Curve::from_integers(g2, g3) else {
                return Ok(());
            };
            let fl = formal_logarithm(&formal_exponential(&curve, 31).unwrap()).unwrap();
            let report = honda_check(&curve, 31, &fl).unwrap();
            prop_assert!(report.all_congruent(), "{:?}", report);
        }
    }

    proptest! {
        #[test]
        fn hasse_bound(index in 2usize..60, a in 0u64..1000, b in 0u64..1000) {
            let p = primes_up_to(300)[index];
            let rc = ReducedCurve { p, a: a % p, b: b % p };
            prop_assume!(!(4 * mod_pow(rc.a, 3, p) + 27 * (rc.b * rc.b % p)).is_multiple_of(p));
            let t = frobenius_trace(&rc);
            prop_assert!((t * t) as u64 <= 4 * p);
        }
    }
}
