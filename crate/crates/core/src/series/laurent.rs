use num_traits::Zero;

use super::{int, Rational, UniSeries};
use crate::error::{Error, Result};

/// `T^valuation · body`, known exactly up to and including the power
/// [`precision`](Self::precision).
///
/// The body always has a nonzero constant term unless the whole series is
/// zero, in which case it is the single coefficient `0` and the valuation
/// equals the precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    valuation: i64,
    body: UniSeries,
}

impl LaurentSeries {
    /// Normalizes `T^valuation · body` into canonical form.
    pub fn new(valuation: i64, body: UniSeries) -> Self {
        let precision = valuation + body.order() as i64;
        match body.valuation() {
            Some(0) => Self { valuation, body },
            Some(k) => Self { valuation: valuation + k as i64, body: body.shift_down(k).expect("leading zeros") },
            None => Self::zero(precision),
        }
    }

    pub fn zero(precision: i64) -> Self {
        Self { valuation: precision, body: UniSeries::zero(0) }
    }

    pub fn from_series(series: &UniSeries) -> Self {
        Self::new(0, series.clone())
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn body(&self) -> &UniSeries {
        &self.body
    }

    /// Highest power of `T` whose coefficient is known.
    pub fn precision(&self) -> i64 {
        self.valuation + self.body.order() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Coefficient of `T^k`; `None` above the precision.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k > self.precision() {
            None
        } else if k < self.valuation {
            Some(Rational::zero())
        } else {
            Some(self.body[(k - self.valuation) as usize].clone())
        }
    }

    /// Drops every term above `precision`.
    pub fn truncate_to(&self, precision: i64) -> Result<Self> {
        if precision > self.precision() {
            return Err(Error::OrderTooLow {
                needed: precision.max(0) as usize,
                available: self.precision().max(0) as usize,
            });
        }
        if precision < self.valuation {
            return Ok(Self::zero(precision));
        }
        Ok(Self::new(self.valuation, self.body.truncate((precision - self.valuation) as usize)?))
    }

    /// Converts to an ordinary power series when the valuation is non-negative.
    pub fn to_series(&self) -> Result<UniSeries> {
        if self.valuation < 0 && !self.is_zero() {
            return Err(Error::Domain(format!("Laurent series has a pole of order {}", -self.valuation)));
        }
        let p = self.precision();
        if p < 0 {
            return Err(Error::OrderTooLow { needed: 0, available: 0 });
        }
        Ok(UniSeries::from_fn(p as usize, |k| self.coeff(k as i64).unwrap()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.valuation, self.body.scale(c))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.valuation, -&self.body)
    }

    /// Sum, known up to the smaller of the two precisions.
    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision().min(other.precision());
        let low = self.valuation.min(other.valuation).min(precision);
        let body = UniSeries::from_fn((precision - low) as usize, |k| {
            let e = low + k as i64;
            self.coeff(e).unwrap() + other.coeff(e).unwrap()
        });
        Self::new(low, body)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.body.order().min(other.body.order());
        let a = self.body.truncate(n).expect("n <= order");
        let b = other.body.truncate(n).expect("n <= order");
        Self::new(self.valuation + other.valuation, &a * &b)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        Ok(Self::new(-self.valuation, self.body.inverse()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::new(self.valuation * k as i64, self.body.pow(k))
    }

    /// Term-by-term derivative, known to `precision - 1`.
    pub fn derivative(&self) -> Self {
        let v = self.valuation;
        let body = UniSeries::from_fn(self.body.order(), |k| &self.body[k] * int(v + k as i64));
        Self::new(v - 1, body)
    }

    /// `self(inner(T))` for an inner series of exact valuation 1.
    ///
    /// Writing `inner = T·u` with `u(0) ≠ 0`, the result is
    /// `T^v · u^v · body(inner)`.
    pub fn compose(&self, inner: &UniSeries) -> Result<Self> {
        if inner.valuation() != Some(1) {
            return Err(Error::CompositionDomain);
        }
        let u = inner.shift_down(1)?;
        let n = self.body.order().min(u.order());
        let u = u.truncate(n)?;
        let body = self.body.truncate(n)?.compose(&inner.truncate(n)?)?;
        let v = self.valuation;
        let factor = if v >= 0 { u.pow(v as u32) } else { u.inverse()?.pow((-v) as u32) };
        Ok(Self::new(v, &factor * &body))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> UniSeries {
        UniSeries::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn normalization_strips_leading_zeros() {
        let l = LaurentSeries::new(-3, s(&[0, 0, 2, 1]));
        assert_eq!(l.valuation(), -1);
        assert_eq!(l.body(), &s(&[2, 1]));
        assert_eq!(l.precision(), 0);
        let z = LaurentSeries::new(-2, s(&[0, 0, 0]));
        assert!(z.is_zero());
        assert_eq!(z.precision(), 0);
    }

    #[test]
    fn pole_derivative() {
        let inv_sq = LaurentSeries::new(-2, s(&[1, 0, 0]));
        let d = inv_sq.derivative();
        assert_eq!(d.valuation(), -3);
        assert_eq!(d.body(), &s(&[-2, 0, 0]));
    }

    #[test]
    fn constant_term_derivative_renormalizes() {
        let l = LaurentSeries::new(0, s(&[5, 0, 3]));
        let d = l.derivative();
        assert_eq!(d.valuation(), 1);
        assert_eq!(d.body(), &s(&[6]));
        assert_eq!(d.precision(), 1);
    }

    #[test]
    fn arithmetic() {
        let a = LaurentSeries::new(-2, s(&[1, 0, 1, 0]));
        let b = LaurentSeries::new(0, s(&[1, 1]));
        let sum = a.add(&b);
        assert_eq!(sum.valuation(), -2);
        assert_eq!(sum.precision(), 1);
        assert_eq!(sum.body(), &s(&[1, 0, 2, 1]));
        let prod = a.mul(&b);
        assert_eq!(prod.valuation(), -2);
        assert_eq!(prod.body(), &s(&[1, 1]));
        let r = a.recip().unwrap();
        assert_eq!(r.valuation(), 2);
        assert_eq!(r.body(), &s(&[1, 0, -1, 0]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.coeff(-5), Some(int(0)));
        assert_eq!(a.coeff(2), None);
    }

    #[test]
    fn compose_with_valuation_one() {
        // (1/T^2) ∘ (T + T^2) = T^-2 (1 + T)^-2
        let p = LaurentSeries::new(-2, s(&[1, 0, 0, 0]));
        let inner = s(&[0, 1, 1, 0, 0]);
        let c = p.compose(&inner).unwrap();
        assert_eq!(c.valuation(), -2);
        assert_eq!(c.body(), &s(&[1, -2, 3, -4]));
        assert_eq!(p.compose(&s(&[0, 0, 1])).unwrap_err(), Error::CompositionDomain);
    }

    #[test]
    fn to_series_requires_no_pole() {
        assert!(LaurentSeries::new(-1, s(&[1, 1])).to_series().is_err());
        assert_eq!(LaurentSeries::new(1, s(&[2, 3])).to_series().unwrap(), s(&[0, 2, 3]));
    }
}
