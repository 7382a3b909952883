//! Laurent expansions of `℘` and `℘'` for `y^2 = 4x^3 - g2 x - g3`.
//!
//! Writing `℘(z) = z^-2 + Σ_{k>=2} c_k z^(2k-2)`, the relation
//! `℘'' = 6℘^2 - g2/2` gives `c_2 = g2/20`, `c_3 = g3/28` and
//!
//! ```text
//! c_k = 3 / ((2k+1)(k-3)) · Σ_{j=2}^{k-2} c_j c_{k-j}      (k >= 4)
//! ```
//!
//! The Eisenstein values follow as `G_{2k} = (2k-2)! c_k / 2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{int, ratio, LaurentSeries, Rational, UniSeries};

/// The curve `y^2 = 4x^3 - g2 x - g3` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    g2: Rational,
    g3: Rational,
    discriminant: Rational,
}

impl Curve {
    /// A nonsingular curve; fails when `g2^3 - 27 g3^2 = 0`.
    pub fn new(g2: Rational, g3: Rational) -> Result<Self> {
        let curve = Self::formal(g2, g3);
        if curve.is_singular() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    /// Accepts any `(g2, g3)`, including singular ones.
    ///
    /// The symbolic steps (℘ expansion, formal exponential and logarithm,
    /// group law) are formal in `(g2, g3)` and stay meaningful on the cusp
    /// `g2 = g3 = 0`, which degenerates to the additive group.
    pub fn formal(g2: Rational, g3: Rational) -> Self {
        let discriminant = &g2 * &g2 * &g2 - int(27) * &g3 * &g3;
        Self { g2, g3, discriminant }
    }

    pub fn from_integers(g2: i64, g3: i64) -> Result<Self> {
        Self::new(int(g2), int(g3))
    }

    pub fn g2(&self) -> &Rational {
        &self.g2
    }

    pub fn g3(&self) -> &Rational {
        &self.g3
    }

    /// `g2^3 - 27 g3^2`.
    pub fn discriminant(&self) -> &Rational {
        &self.discriminant
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant.is_zero()
    }

    /// The curve with invariants `(λ^4 g2, λ^6 g3)`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        let l2 = lambda * lambda;
        let l4 = &l2 * &l2;
        let l6 = &l4 * &l2;
        Self::formal(&self.g2 * l4, &self.g3 * l6)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = 4x^3 - ({})x - ({})", self.g2, self.g3)
    }
}

/// Exact coefficients `c_2..=c_N` of `℘(z) = z^-2 + Σ c_k z^(2k-2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpExpansion {
    curve: Curve,
    /// `c[k]` for `0 <= k <= N`; entries 0 and 1 are unused zeros.
    c: Vec<Rational>,
}

impl WpExpansion {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Number of coefficient terms, i.e. the largest `k` with `c_k` known.
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    /// `c_k` for `2 <= k <= N`.
    pub fn c(&self, k: usize) -> Option<&Rational> {
        (k >= 2).then(|| self.c.get(k)).flatten()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.c[2..]
    }

    /// `℘(z)` with valuation -2. Because `℘` is even the odd coefficient just
    /// past the last `c_N` term is also known, so the precision is `2N - 1`.
    pub fn laurent(&self) -> LaurentSeries {
        let n = self.order();
        let mut body = UniSeries::zero(2 * n + 1);
        body.set_coeff(0, int(1));
        for k in 2..=n {
            body.set_coeff(2 * k, self.c[k].clone());
        }
        LaurentSeries::new(-2, body)
    }

    /// `℘'(z)` with valuation -3, precision `2N - 2`.
    pub fn prime_laurent(&self) -> LaurentSeries {
        self.laurent().derivative()
    }

    /// `G_k`; zero for odd `k`.
    pub fn eisenstein(&self, k: usize) -> Result<Rational> {
        if k < 4 {
            return Err(Error::Domain(format!("G_k needs k >= 4, got {k}")));
        }
        if k % 2 == 1 {
            return Ok(Rational::zero());
        }
        let c = self.c(k / 2).ok_or(Error::OrderTooLow { needed: k / 2, available: self.order() })?;
        Ok(c * Rational::from_integer(factorial(k - 2)) / int(2))
    }

    /// `BH_k = 2k G_k`; zero for odd `k`.
    pub fn bernoulli_hurwitz(&self, k: usize) -> Result<Rational> {
        Ok(self.eisenstein(k)? * int(2 * k as i64))
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// Runs the `c_k` recursion up to `k = n`.
pub fn wp_coefficients(curve: &Curve, n: usize) -> Result<WpExpansion> {
    if n < 2 {
        return Err(Error::Domain(format!("℘ expansion needs N >= 2, got {n}")));
    }
    let mut c = vec![Rational::zero(); n + 1];
    c[2] = curve.g2() / int(20);
    if n >= 3 {
        c[3] = curve.g3() / int(28);
    }
    for k in 4..=n {
        let mut acc = Rational::zero();
        for j in 2..=k - 2 {
            if !c[j].is_zero() && !c[k - j].is_zero() {
                acc += &c[j] * &c[k - j];
            }
        }
        c[k] = acc * ratio(3, ((2 * k + 1) * (k - 3)) as i64);
    }
    Ok(WpExpansion { curve: curve.clone(), c })
}

/// `℘(z)` as a Laurent series built from `c_2..=c_N`.
pub fn wp_laurent(curve: &Curve, n: usize) -> Result<LaurentSeries> {
    Ok(wp_coefficients(curve, n)?.laurent())
}

/// `℘'(z)` as a Laurent series built from `c_2..=c_N`.
pub fn wp_prime_laurent(curve: &Curve, n: usize) -> Result<LaurentSeries> {
    Ok(wp_coefficients(curve, n)?.prime_laurent())
}

/// Eisenstein value `G_k` for `k >= 4`.
pub fn eisenstein_g(curve: &Curve, k: usize) -> Result<Rational> {
    if k < 4 {
        return Err(Error::Domain(format!("G_k needs k >= 4, got {k}")));
    }
    wp_coefficients(curve, (k / 2).max(2))?.eisenstein(k)
}

/// Bernoulli–Hurwitz number `BH_k = 2k G_k` for `k >= 4`.
pub fn bernoulli_hurwitz(curve: &Curve, k: usize) -> Result<Rational> {
    Ok(eisenstein_g(curve, k)? * int(2 * k as i64))
}
