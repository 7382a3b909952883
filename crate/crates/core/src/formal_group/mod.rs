//! Formal exponential, formal logarithm, universal Bernoulli numbers and the
//! formal group law of `y^2 = 4x^3 - g2 x - g3`.
//!
//! The local parameter at the origin is `t = -2x/y`, with the companion
//! coordinate `s = -2/y`. In these coordinates the curve becomes
//! `s = t^3 - (g2/4) t s^2 - (g3/4) s^3`, the exponential is
//! `f_E(z) = -2℘(z)/℘'(z)` and the logarithm is its compositional inverse.

mod axioms;

pub use axioms::{check_axioms, AxiomReport};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{int, BiSeries, LaurentSeries, Rational, UniSeries};
use crate::weierstrass::{factorial, wp_coefficients, Curve};

/// `f_E(T) = T + O(T^5)`, odd in `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalExp {
    pub curve: Curve,
    pub series: UniSeries,
}

/// `f_L(T) = Σ a(n)/n T^n`, the compositional inverse of `f_E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalLog {
    pub curve: Curve,
    pub series: UniSeries,
    an: Vec<Rational>,
}

impl FormalLog {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// `a(n) = n · [T^n] f_L` for `1 <= n <= order`.
    pub fn a(&self, n: usize) -> Option<&Rational> {
        if n == 0 {
            return None;
        }
        self.an.get(n - 1)
    }

    /// `a(1), a(2), ..., a(order)`.
    pub fn an(&self) -> &[Rational] {
        &self.an
    }
}

/// The power series `s(t)` along the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCoordinate {
    pub curve: Curve,
    pub s: UniSeries,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// `f_E(f_L(t1) + f_L(t2))`.
    ExpLog,
    /// Chord construction in the `(t, s)` plane.
    BuchstaberBunkova,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ExpLog => "exp-log",
            Provenance::BuchstaberBunkova => "buchstaber-bunkova",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLaw {
    pub curve: Curve,
    pub series: BiSeries,
    pub provenance: Provenance,
}

impl GroupLaw {
    pub fn order(&self) -> usize {
        self.series.order()
    }
}

/// `f_E = -2℘/℘'` to order `n`, via `f_E = -2 T · (T^2 ℘) / (T^3 ℘')`.
pub fn formal_exponential(curve: &Curve, n: usize) -> Result<FormalExp> {
    if n == 0 {
        return Err(Error::Domain("formal exponential needs N >= 1".into()));
    }
    // T^2 ℘ and T^3 ℘' have body order 2k + 1 from c_2..c_k; we need n - 1.
    let terms = (n / 2).max(2);
    let wp = wp_coefficients(curve, terms)?;
    let p = wp.laurent();
    let dp = wp.prime_laurent();
    debug_assert_eq!((p.valuation(), dp.valuation()), (-2, -3));
    let num = p.body().truncate(n - 1)?;
    let den = dp.body().truncate(n - 1)?;
    let series = num.checked_div(&den)?.shift_up(1).scale(&int(-2));
    Ok(FormalExp { curve: curve.clone(), series })
}

/// `f_L` by series reversion of `f_E`.
pub fn formal_logarithm(fe: &FormalExp) -> Result<FormalLog> {
    let series = fe.series.reverse()?;
    let an = (1..=series.order()).map(|n| &series[n] * int(n as i64)).collect();
    Ok(FormalLog { curve: fe.curve.clone(), series, an })
}

/// `B̂_k = k! [T^k] T/f(T)` for `0 <= k <= n`, for any `f = T + O(T^2)`.
pub fn universal_bernoulli_of(f: &UniSeries, n: usize) -> Result<Vec<Rational>> {
    if f.order() < n + 1 {
        return Err(Error::OrderTooLow { needed: n + 1, available: f.order() });
    }
    if !f[0].is_zero() || !f[1].is_one() {
        return Err(Error::ReversionDomain);
    }
    let ratio = f.truncate(n + 1)?.shift_down(1)?.inverse()?;
    Ok((0..=n).map(|k| &ratio[k] * Rational::from_integer(factorial(k))).collect())
}

/// Universal Bernoulli numbers `B̂_0..=B̂_n` of the curve's formal group.
pub fn universal_bernoulli(fe: &FormalExp, n: usize) -> Result<Vec<Rational>> {
    universal_bernoulli_of(&fe.series, n)
}

/// Solves `s = t^3 - (g2/4) t s^2 - (g3/4) s^3` to order `n` by fixed-point
/// iteration from `s = t^3`; each pass fixes at least four more coefficients.
pub fn s_expansion(curve: &Curve, n: usize) -> Result<SCoordinate> {
    if n < 3 {
        return Err(Error::Domain(format!("s(t) needs N >= 3, got {n}")));
    }
    let a = curve.g2() / int(4);
    let b = curve.g3() / int(4);
    let t = UniSeries::var(n);
    let cube = UniSeries::monomial(int(1), 3, n);
    let mut s = cube.clone();
    for _ in 0..=n / 4 + 1 {
        let s2 = &s * &s;
        let next = &(&cube - &(&t * &s2).scale(&a)) - &(&s2 * &s).scale(&b);
        if next == s {
            break;
        }
        s = next;
    }
    Ok(SCoordinate { curve: curve.clone(), s })
}

/// `F(t1, t2) = f_E(f_L(t1) + f_L(t2))` to total degree `n`.
pub fn group_law_exp_log(fe: &FormalExp, fl: &FormalLog, n: usize) -> Result<GroupLaw> {
    if fe.curve != fl.curve {
        return Err(Error::Domain("exponential and logarithm belong to different curves".into()));
    }
    let fl_n = fl.series.truncate(n)?;
    let inner = &BiSeries::from_t1(&fl_n) + &BiSeries::from_t2(&fl_n);
    let series = fe.series.truncate(n)?.substitute_bi(&inner)?;
    Ok(GroupLaw { curve: fe.curve.clone(), series, provenance: Provenance::ExpLog })
}

/// The chord-and-tangent law in `(t, s)` coordinates, to total degree `n`:
///
/// ```text
/// F = t1 + t2 - b m (2 g2 + 3 g3 m) / (4 - g2 m^2 - g3 m^3)
/// ```
///
/// with slope `m = (s1 - s2)/(t1 - t2)` and intercept `b = s2 - t2 m`.
pub fn group_law_bb(curve: &Curve, n: usize) -> Result<GroupLaw> {
    if n < 2 {
        return Err(Error::Domain(format!("group law needs N >= 2, got {n}")));
    }
    let s = s_expansion(curve, n + 1)?.s;
    let m = s.divided_difference();
    let b = &BiSeries::from_t2(&s.truncate(n)?) - &(&BiSeries::t2(n) * &m);
    let g2 = curve.g2();
    let g3 = curve.g3();
    let numerator = &BiSeries::one(n).scale(&(g2 * int(2))) + &m.scale(&(g3 * int(3)));
    // 1 / (4 - g2 X^2 - g3 X^3) as a series in X, evaluated at X = m.
    let mut den = UniSeries::monomial(int(4), 0, n);
    den.set_coeff(2, -g2.clone());
    if n >= 3 {
        den.set_coeff(3, -g3.clone());
    }
    let den_inv = den.inverse()?.substitute_bi(&m)?;
    let correction = &(&(&b * &m) * &numerator) * &den_inv;
    let series = &(&BiSeries::t1(n) + &BiSeries::t2(n)) - &correction;
    Ok(GroupLaw { curve: curve.clone(), series, provenance: Provenance::BuchstaberBunkova })
}

/// Checks neutrality, commutativity and associativity to the law's order.
pub fn verify_axioms(law: &GroupLaw) -> AxiomReport {
    check_axioms(&law.series)
}

/// `℘(f_L(t))` and `℘'(f_L(t))` as Laurent series in `t`, known to
/// `precision`.
pub fn wp_pullback(curve: &Curve, fl: &FormalLog, precision: usize) -> Result<(LaurentSeries, LaurentSeries)> {
    // ℘' has a triple pole, so f_L must be known four orders past the target.
    let fl_n = fl.series.truncate(precision + 4)?;
    let wp = wp_coefficients(curve, precision / 2 + 3)?;
    let x = wp.laurent().compose(&fl_n)?.truncate_to(precision as i64)?;
    let y = wp.prime_laurent().compose(&fl_n)?.truncate_to(precision as i64)?;
    Ok((x, y))
}

/// `x = t/s` and `y = -2/s` as Laurent series in `t`, known to `precision`.
pub fn xy_from_s(s: &SCoordinate, precision: usize) -> Result<(LaurentSeries, LaurentSeries)> {
    // s = t^3 (1 + ...), so 1/s loses three orders against s itself.
    let s_l = LaurentSeries::from_series(&s.s.truncate(precision + 6)?);
    let inv = s_l.recip()?;
    let t = LaurentSeries::new(1, UniSeries::one(precision + 6));
    let x = t.mul(&inv).truncate_to(precision as i64)?;
    let y = inv.scale(&int(-2)).truncate_to(precision as i64)?;
    Ok((x, y))
}

/// Truncated `e^T - 1`, the exponential of the multiplicative formal group.
pub fn exp_minus_one(order: usize) -> UniSeries {
    let mut out = UniSeries::zero(order);
    let mut c = Rational::one();
    for k in 1..=order {
        c /= int(k as i64);
        out.set_coeff(k, c.clone());
    }
    out
}

/// Classical Bernoulli numbers `B_0..=B_n` from `T/(e^T - 1)`.
pub fn classical_bernoulli(n: usize) -> Vec<Rational> {
    universal_bernoulli_of(&exp_minus_one(n + 1), n).expect("e^T - 1 = T + O(T^2)")
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::series::ratio;
    use proptest::prelude::*;

    fn curve() -> impl Strategy<Value = Curve> {
        ((-20i64..=20, 1i64..=5), (-20i64..=20, 1i64..=5))
            .prop_map(|((a, b), (c, d))| Curve::formal(ratio(a, b), ratio(c, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn exponential_and_logarithm_are_inverse(curve in curve()) {
            let fe = formal_exponential(&curve, 15).unwrap();
            let fl = formal_logarithm(&fe).unwrap();
            prop_assert_eq!(fe.series.compose(&fl.series).unwrap(), UniSeries::var(15));
            prop_assert_eq!(fl.series.compose(&fe.series).unwrap(), UniSeries::var(15));
            prop_assert_eq!(fe.series.reflect(), -&fe.series);
        }

        #[test]
        fn constructions_agree(curve in curve()) {
            let fe = formal_exponential(&curve, 7).unwrap();
            let fl = formal_logarithm(&fe).unwrap();
            let exp_log = group_law_exp_log(&fe, &fl, 7).unwrap();
            let bb = group_law_bb(&curve, 7).unwrap();
            prop_assert_eq!(&exp_log.series, &bb.series);
            prop_assert!(verify_axioms(&bb).passed());
        }

        #[test]
        fn s_solves_the_curve_equation(curve in curve()) {
            let s = s_expansion(&curve, 13).unwrap().s;
            let t = UniSeries::var(13);
            let s2 = s.checked_mul(&s).unwrap();
            let rhs = t.pow(3)
                .checked_sub(&t.checked_mul(&s2).unwrap().scale(&(curve.g2() / int(4)))).unwrap()
                .checked_sub(&s2.checked_mul(&s).unwrap().scale(&(curve.g3() / int(4)))).unwrap();
            prop_assert_eq!(s, rhs);
        }

        #[test]
        fn bernoulli_hurwitz_relations(curve in curve()) {
            let fe = formal_exponential(&curve, 7).unwrap();
            let b = universal_bernoulli(&fe, 6).unwrap();
            let wp = wp_coefficients(&curve, 3).unwrap();
            prop_assert_eq!(&b[4], &(wp.bernoulli_hurwitz(4).unwrap() * int(-6)));
            prop_assert_eq!(&b[6], &(wp.bernoulli_hurwitz(6).unwrap() * int(-15)));
        }
    }
}
