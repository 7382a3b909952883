use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, UniSeries};
use crate::error::{Error, Result};

/// Bivariate series `Σ c_ij t1^i t2^j` truncated at total degree `order`.
///
/// Only the triangle `i + j <= order` is stored, grouped by total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

fn slot(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        let len = (order + 1) * (order + 2) / 2;
        Self { order, coeffs: vec![Rational::zero(); len] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// `t1` as a bivariate series.
    pub fn t1(order: usize) -> Self {
        Self::from_t1(&UniSeries::var(order))
    }

    /// `t2` as a bivariate series.
    pub fn t2(order: usize) -> Self {
        Self::from_t2(&UniSeries::var(order))
    }

    /// `f(t1)` for a univariate `f`; the order is inherited from `f`.
    pub fn from_t1(f: &UniSeries) -> Self {
        let mut s = Self::zero(f.order());
        for (i, c) in f.coeffs().iter().enumerate() {
            s.coeffs[slot(i, 0)] = c.clone();
        }
        s
    }

    /// `f(t2)` for a univariate `f`.
    pub fn from_t2(f: &UniSeries) -> Self {
        let mut s = Self::zero(f.order());
        for (j, c) in f.coeffs().iter().enumerate() {
            s.coeffs[slot(0, j)] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t1^i t2^j`; `None` beyond the total-degree cutoff.
    pub fn coeff(&self, i: usize, j: usize) -> Option<&Rational> {
        (i + j <= self.order).then(|| &self.coeffs[slot(i, j)])
    }

    /// Panics if `i + j > order`.
    pub fn set_coeff(&mut self, i: usize, j: usize, c: Rational) {
        assert!(i + j <= self.order, "({i}, {j}) beyond total degree {}", self.order);
        self.coeffs[slot(i, j)] = c;
    }

    /// All `(i, j, c_ij)` with `i + j <= order`, by total degree then `j`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        (0..=self.order).flat_map(|d| (0..=d).map(move |j| (d - j, j))).zip(&self.coeffs).map(|((i, j), c)| (i, j, c))
    }

    /// The homogeneous part of total degree `d` as `(i, j, c)` triples.
    pub fn slice(&self, d: usize) -> Vec<(usize, usize, Rational)> {
        if d > self.order {
            return Vec::new();
        }
        (0..=d).map(|j| (d - j, j, self.coeffs[slot(d - j, j)].clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::OrderTooLow { needed: order, available: self.order });
        }
        let len = (order + 1) * (order + 2) / 2;
        Ok(Self { order, coeffs: self.coeffs[..len].to_vec() })
    }

    /// `F(t2, t1)`.
    pub fn swap(&self) -> Self {
        let mut s = Self::zero(self.order);
        for (i, j, c) in self.terms() {
            s.coeffs[slot(j, i)] = c.clone();
        }
        s
    }

    /// `F(t, 0)` as a univariate series in `t`.
    pub fn at_t2_zero(&self) -> UniSeries {
        UniSeries::from_fn(self.order, |i| self.coeffs[slot(i, 0)].clone())
    }

    /// `F(0, t)` as a univariate series in `t`.
    pub fn at_t1_zero(&self) -> UniSeries {
        UniSeries::from_fn(self.order, |j| self.coeffs[slot(0, j)].clone())
    }

    /// `F(t, t)` as a univariate series in `t`.
    pub fn diagonal(&self) -> UniSeries {
        let mut out = UniSeries::zero(self.order);
        for (i, j, c) in self.terms() {
            let k = i + j;
            let v = &out[k] + c;
            out.set_coeff(k, v);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self { order: self.order, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self { order: self.order, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Product truncated at total degree `order`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order;
        let rhs: Vec<(usize, usize, &Rational)> = other.terms().filter(|(_, _, c)| !c.is_zero()).collect();
        let mut out = Self::zero(n);
        for (i, j, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            let room = n - (i + j);
            for &(k, l, b) in &rhs {
                if k + l > room {
                    // `rhs` is sorted by total degree.
                    break;
                }
                out.coeffs[slot(i + k, j + l)] += a * b;
            }
        }
        Ok(out)
    }

    /// Inverse of a series with nonzero constant term, via `1/(c(1 + r))`
    /// expanded as a geometric series in `r`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let inv0 = c0.recip();
        let mut rest = self.scale(&inv0);
        rest.coeffs[0] = Rational::zero();
        let geometric = UniSeries::from_fn(self.order, |k| if k % 2 == 0 { Rational::one() } else { -Rational::one() });
        Ok(geometric.substitute_bi(&rest)?.scale(&inv0))
    }
}

impl UniSeries {
    /// `(f(t1) - f(t2)) / (t1 - t2)` as an exact bivariate series.
    ///
    /// `T^k` contributes `Σ_{i+j=k-1} t1^i t2^j`, so the result is known to
    /// total degree `order - 1` and no division is performed.
    pub fn divided_difference(&self) -> BiSeries {
        if self.order() == 0 {
            return BiSeries::zero(0);
        }
        let n = self.order() - 1;
        let mut out = BiSeries::zero(n);
        for d in 0..=n {
            for j in 0..=d {
                out.coeffs[slot(d - j, j)] = self[d + 1].clone();
            }
        }
        out
    }

    /// `self(inner(t1, t2))`, truncated at the shared order.
    pub fn substitute_bi(&self, inner: &BiSeries) -> Result<BiSeries> {
        if self.order() != inner.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: inner.order() });
        }
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionDomain);
        }
        let mut acc = BiSeries::zero(inner.order());
        for c in self.coeffs().iter().rev() {
            acc = &acc * inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

/// Free-function form of [`UniSeries::divided_difference`].
pub fn divided_difference(f: &UniSeries) -> BiSeries {
    f.divided_difference()
}

/// Free-function form of [`UniSeries::substitute_bi`].
pub fn bi_substitute(outer: &UniSeries, inner: &BiSeries) -> Result<BiSeries> {
    outer.substitute_bi(inner)
}

impl Add for &BiSeries {
    type Output = BiSeries;

    fn add(self, rhs: &BiSeries) -> BiSeries {
        self.checked_add(rhs).expect("BiSeries + BiSeries")
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;

    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self.checked_sub(rhs).expect("BiSeries - BiSeries")
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;

    fn mul(self, rhs: &BiSeries) -> BiSeries {
        self.checked_mul(rhs).expect("BiSeries * BiSeries")
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;

    fn neg(self) -> BiSeries {
        BiSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn s(c: &[i64]) -> UniSeries {
        UniSeries::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    fn bi(order: usize, terms: &[(usize, usize, i64)]) -> BiSeries {
        let mut b = BiSeries::zero(order);
        for &(i, j, c) in terms {
            b.set_coeff(i, j, int(c));
        }
        b
    }

    #[test]
    fn divided_differences() {
        assert_eq!(s(&[0, 0, 1]).divided_difference(), bi(1, &[(1, 0, 1), (0, 1, 1)]));
        assert_eq!(s(&[0, 0, 0, 1]).divided_difference(), bi(2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1)]));
        let f = s(&[0, 0, 0, 1, 0, 0, 0, 1]);
        let mut expected = bi(6, &[(2, 0, 1), (1, 1, 1), (0, 2, 1)]);
        for i in 0..=6 {
            expected.set_coeff(i, 6 - i, int(1));
        }
        assert_eq!(f.divided_difference(), expected);
    }

    #[test]
    fn substitution() {
        let sum = bi(3, &[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(UniSeries::var(3).substitute_bi(&sum).unwrap(), sum);
        assert_eq!(s(&[0, 0, 1, 0]).substitute_bi(&sum).unwrap(), bi(3, &[(2, 0, 1), (1, 1, 2), (0, 2, 1)]));
        let cubic = s(&[0, 1, 0, 1]).substitute_bi(&sum).unwrap();
        let expected = bi(3, &[(1, 0, 1), (0, 1, 1), (3, 0, 1), (2, 1, 3), (1, 2, 3), (0, 3, 1)]);
        assert_eq!(cubic, expected);
        let unit = bi(3, &[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(s(&[0, 1, 0, 0]).substitute_bi(&unit).unwrap_err(), Error::CompositionDomain);
    }

    #[test]
    fn inverse_and_product() {
        let a = bi(4, &[(0, 0, 2), (1, 0, 1), (1, 1, -3)]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, BiSeries::one(4));
        assert_eq!(BiSeries::t1(3).inverse().unwrap_err(), Error::NonUnitDivisor);
    }

    #[test]
    fn views() {
        let f = bi(3, &[(1, 0, 1), (0, 1, 2), (2, 1, 5)]);
        assert_eq!(f.at_t2_zero(), s(&[0, 1, 0, 0]));
        assert_eq!(f.at_t1_zero(), s(&[0, 2, 0, 0]));
        assert_eq!(f.diagonal(), s(&[0, 3, 0, 5]));
        assert_eq!(f.swap().coeff(1, 2), Some(&int(5)));
        assert_eq!(f.coeff(3, 1), None);
        assert_eq!(f.slice(3), vec![(3, 0, int(0)), (2, 1, int(5)), (1, 2, int(0)), (0, 3, int(0))]);
        assert!(f.slice(4).is_empty());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::series::{int, ratio};
    use proptest::prelude::*;

    fn series(order: usize) -> impl Strategy<Value = UniSeries> {
        proptest::collection::vec((-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d)), order + 1)
            .prop_map(UniSeries::from_coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn divided_difference_on_the_axis(f in series(9)) {
            let dd = divided_difference(&f);
            prop_assert_eq!(dd.at_t2_zero(), UniSeries::from_fn(8, |i| f[i + 1].clone()));
            prop_assert_eq!(dd.swap(), dd);
        }

        #[test]
        fn divided_difference_times_difference(f in series(8)) {
            // (t1 - t2) raises the degree by one, so the order 7 quotient fixes the product to order 8.
            let mut dd = BiSeries::zero(8);
            for (i, j, c) in divided_difference(&f).terms() {
                dd.set_coeff(i, j, c.clone());
            }
            let diff = BiSeries::t1(8).checked_sub(&BiSeries::t2(8)).unwrap();
            let product = dd.checked_mul(&diff).unwrap();
            let rhs = BiSeries::from_t1(&f).checked_sub(&BiSeries::from_t2(&f)).unwrap();
            prop_assert_eq!(product, rhs);
        }

        #[test]
        fn bivariate_inverse(f in series(6), c0 in 1i64..5) {
            let mut g = BiSeries::from_t1(&f).checked_add(&BiSeries::from_t2(&f)).unwrap();
            g.set_coeff(0, 0, int(c0));
            let inv = g.inverse().unwrap();
            prop_assert_eq!(g.checked_mul(&inv).unwrap(), BiSeries::one(6));
        }
    }
}
