//! Exact formal-group machinery for rational Weierstrass curves
//! `y^2 = 4x^3 - g2 x - g3`.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`weierstrass`] expands `℘(z)` and `℘'(z)` as exact Laurent series.
//! 2. [`formal_group`] forms the formal exponential `f_E(T) = -2℘(T)/℘'(T)`,
//!    reverts it into the formal logarithm `f_L`, and builds the formal group
//!    law both as `f_E(f_L(t1) + f_L(t2))` and from the chord construction in
//!    the `(t, s)` coordinates.
//! 3. [`lseries`] reads the candidate L-series coefficients `a(n)` off `f_L`
//!    and checks them against point counts modulo primes.
//! 4. [`numeric`] evaluates the q-series `F(z) = Σ a(n)/n q^n` and the
//!    parametrization `(℘(F(z)), ℘'(F(z)))` in floating point.
//!
//! All symbolic work is done over [`Rational`] with truncated power series from
//! [`series`].

pub mod error;
pub mod formal_group;
pub mod lseries;
pub mod numeric;
pub mod series;
pub mod weierstrass;

pub use error::{Error, Result};
pub use series::{BiSeries, LaurentSeries, Rational, UniSeries};
pub use weierstrass::Curve;
