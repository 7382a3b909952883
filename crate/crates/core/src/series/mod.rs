//! Truncated power series over exact rationals.
//!
//! [`UniSeries`] and [`BiSeries`] carry an explicit truncation order; every
//! binary operation requires both operands to share it and never looks past
//! it. [`LaurentSeries`] is a valuation offset on top of a [`UniSeries`] body
//! and only implements what the ℘-function bookkeeping needs.

mod bi;
mod laurent;
mod uni;

pub use bi::{bi_substitute, divided_difference, BiSeries};
pub use laurent::LaurentSeries;
pub use uni::UniSeries;

use num_bigint::BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
