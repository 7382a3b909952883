//! Coefficient-exact checks of the formal group law axioms.
//!
//! Associativity is checked by expanding both `F(t1, F(t2, t3))` and
//! `F(F(t1, t2), t3)` as trivariate series truncated at the law's order.

use num_traits::Zero;

use crate::series::{BiSeries, Rational, UniSeries};

/// Outcome of [`check_axioms`]; failures are recorded, not raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub order: usize,
    /// `F(t, 0) = t` and `F(0, t) = t`.
    pub neutral: bool,
    /// `F(t1, t2) = F(t2, t1)`.
    pub commutative: bool,
    /// `F(t1, F(t2, t3)) = F(F(t1, t2), t3)`.
    pub associative: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.neutral && self.commutative && self.associative
    }
}

pub fn check_axioms(law: &BiSeries) -> AxiomReport {
    let n = law.order();
    let t = UniSeries::var(n);
    AxiomReport {
        order: n,
        neutral: law.at_t2_zero() == t && law.at_t1_zero() == t,
        commutative: &law.swap() == law,
        associative: associativity_defect(law).is_zero(),
    }
}

/// `F(t1, F(t2, t3)) - F(F(t1, t2), t3)` as a trivariate series.
fn associativity_defect(law: &BiSeries) -> TriSeries {
    let n = law.order();
    let left = substitute(law, &TriSeries::var(n, 0), &TriSeries::embed(law, 1, 2));
    let right = substitute(law, &TriSeries::embed(law, 0, 1), &TriSeries::var(n, 2));
    left.sub(&right)
}

/// `F(x, y)` for trivariate `x`, `y` with zero constant terms:
/// `Σ_j (Σ_i a_ij x^i) y^j`, Horner in `y`.
fn substitute(law: &BiSeries, x: &TriSeries, y: &TriSeries) -> TriSeries {
    let n = law.order();
    let mut x_powers = vec![TriSeries::one(n)];
    for i in 1..=n {
        let next = x_powers[i - 1].mul(x);
        x_powers.push(next);
    }
    let mut acc = TriSeries::zero(n);
    for j in (0..=n).rev() {
        acc = acc.mul(y);
        for (i, xp) in x_powers.iter().enumerate().take(n - j + 1) {
            let a = law.coeff(i, j).expect("i + j <= n");
            if !a.is_zero() {
                acc.add_scaled(xp, a);
            }
        }
    }
    acc
}

/// Dense trivariate series truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq)]
struct TriSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

fn slot(i: usize, j: usize, k: usize) -> usize {
    let d = i + j + k;
    let r = j + k;
    d * (d + 1) * (d + 2) / 6 + r * (r + 1) / 2 + k
}

fn exponents(order: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=order).flat_map(|d| (0..=d).flat_map(move |r| (0..=r).map(move |k| (d - r, r - k, k))))
}

impl TriSeries {
    fn zero(order: usize) -> Self {
        let len = (order + 1) * (order + 2) * (order + 3) / 6;
        Self { order, coeffs: vec![Rational::zero(); len] }
    }

    fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::from_integer(1.into());
        s
    }

    /// The variable with index `which` (0, 1 or 2).
    fn var(order: usize, which: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            let e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)][which];
            s.coeffs[slot(e.0, e.1, e.2)] = Rational::from_integer(1.into());
        }
        s
    }

    /// `F(v_a, v_b)` with the law's two arguments placed on variables `a < b`.
    fn embed(law: &BiSeries, a: usize, b: usize) -> Self {
        let mut s = Self::zero(law.order());
        for (i, j, c) in law.terms() {
            let mut e = [0usize; 3];
            e[a] += i;
            e[b] += j;
            s.coeffs[slot(e[0], e[1], e[2])] = c.clone();
        }
        s
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.order;
        let rhs: Vec<((usize, usize, usize), &Rational)> =
            exponents(n).zip(&other.coeffs).filter(|(_, c)| !c.is_zero()).collect();
        let mut out = Self::zero(n);
        for ((i, j, k), a) in exponents(n).zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            let room = n - (i + j + k);
            for &((p, q, r), b) in &rhs {
                if p + q + r > room {
                    break;
                }
                out.coeffs[slot(i + p, j + q, k + r)] += a * b;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn slots_are_dense_and_ordered() {
        for (idx, (i, j, k)) in exponents(6).enumerate() {
            assert_eq!(slot(i, j, k), idx);
        }
    }

    #[test]
    fn additive_and_multiplicative_laws_pass() {
        let n = 6;
        let additive = &BiSeries::t1(n) + &BiSeries::t2(n);
        assert!(check_axioms(&additive).passed());
        // t1 + t2 + t1 t2
        let mut mult = additive.clone();
        mult.set_coeff(1, 1, int(1));
        assert!(check_axioms(&mult).passed());
    }

    #[test]
    fn broken_laws_are_reported() {
        let n = 5;
        let mut law = &BiSeries::t1(n) + &BiSeries::t2(n);
        law.set_coeff(2, 1, int(1));
        law.set_coeff(1, 2, int(1));
        let report = check_axioms(&law);
        assert!(report.neutral && report.commutative);
        assert!(!report.associative);

        let mut lopsided = &BiSeries::t1(n) + &BiSeries::t2(n);
        lopsided.set_coeff(2, 1, int(1));
        assert!(!check_axioms(&lopsided).commutative);

        let mut shifted = &BiSeries::t1(n) + &BiSeries::t2(n);
        shifted.set_coeff(2, 0, int(1));
        assert!(!check_axioms(&shifted).neutral);
    }
}
