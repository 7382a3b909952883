//! Floating-point evaluation of the q-series `F(z) = Σ a(n)/n q^n`,
//! `q = exp(2πiz)`, and of the parametrization `α(z) = ℘(F(z))`,
//! `β(z) = ℘'(F(z))`.
//!
//! Everything is generic over a [`Real`] backend; `f64` is the default and
//! `f32` is provided as a low-precision backend. `℘` is evaluated from its
//! truncated Laurent series only, so points outside the disk where the last
//! retained term is negligible are refused instead of evaluated.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formal_group::FormalLog;
use crate::series::Rational;
use crate::weierstrass::{wp_coefficients, Curve};

/// Relative size of the last retained ℘ term at the edge of the reliability
/// disk.
pub const RADIUS_TOLERANCE: f64 = 1e-12;

/// Scalar backend for the numeric evaluation.
pub trait Real: Float + FloatConst + Debug + Display + LowerExp + Send + Sync + 'static {
    /// Binary digits in the significand.
    const PRECISION_BITS: u32;

    fn from_rational(x: &Rational) -> Self;

    fn from_f64(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("finite f64")
    }
}

impl Real for f64 {
    const PRECISION_BITS: u32 = f64::MANTISSA_DIGITS;

    fn from_rational(x: &Rational) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    const PRECISION_BITS: u32 = f32::MANTISSA_DIGITS;

    fn from_rational(x: &Rational) -> Self {
        x.to_f32().unwrap_or(f32::NAN)
    }
}

pub type ComplexVal<T = f64> = Complex<T>;

fn two_pi_i<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::TAU())
}

/// `exp(2πiz)`, requiring `Im z > 0`.
pub fn nome<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if !(z.im > T::zero()) {
        return Err(Error::HalfPlane(z.im.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((two_pi_i::<T>() * z).exp())
}

/// `Σ_{n<=nmax} c_n q^n` together with the modulus of the last nonzero term.
fn q_sum<T: Real>(coeffs: impl Iterator<Item = T>, q: Complex<T>) -> (Complex<T>, T) {
    let mut power = q;
    let mut acc = Complex::zero();
    let mut last = T::zero();
    for c in coeffs {
        if !c.is_zero() {
            let term = power * c;
            acc = acc + term;
            last = term.norm();
        }
        power = power * q;
    }
    (acc, last)
}

fn check_nmax(fl: &FormalLog, nmax: usize) -> Result<()> {
    if nmax > fl.order() {
        return Err(Error::OrderTooLow { needed: nmax, available: fl.order() });
    }
    Ok(())
}

/// `F(z) = Σ_{n<=nmax} a(n)/n q^n` and a heuristic truncation estimate: the
/// modulus of the last nonzero retained term `a(n)/n · q^n`. (The formal
/// logarithm is odd, so `a(nmax)` itself is zero whenever `nmax` is even.)
pub fn eval_f<T: Real>(fl: &FormalLog, z: Complex<T>, nmax: usize) -> Result<(Complex<T>, T)> {
    check_nmax(fl, nmax)?;
    let q = nome(z)?;
    Ok(q_sum(fl.series.coeffs()[1..=nmax].iter().map(T::from_rational), q))
}

/// The weight-2 cusp form `f(z) = Σ_{n<=nmax} a(n) q^n`, so that
/// `F'(z) = 2πi f(z)`.
pub fn cusp_form<T: Real>(fl: &FormalLog, z: Complex<T>, nmax: usize) -> Result<Complex<T>> {
    check_nmax(fl, nmax)?;
    let q = nome(z)?;
    Ok(q_sum(fl.an()[..nmax].iter().map(T::from_rational), q).0)
}

/// Truncated Laurent evaluation of `℘` and `℘'` near the origin.
#[derive(Clone, Debug)]
pub struct WpEvaluator<T> {
    g2: T,
    g3: T,
    /// `(k, c_k)` for the nonzero `c_k`.
    terms: Vec<(i32, T)>,
    radius: T,
}

impl<T: Real> WpEvaluator<T> {
    /// Uses `c_2..=c_n`. The reliability radius is where the last nonzero
    /// retained term `c_K w^(2K-2)` drops to [`RADIUS_TOLERANCE`] of the pole
    /// term `w^-2`, i.e. `r = (tol / |c_K|)^(1/2K)`.
    pub fn new(curve: &Curve, n: usize) -> Result<Self> {
        let wp = wp_coefficients(curve, n)?;
        let terms: Vec<(i32, T)> = (2..=n)
            .filter_map(|k| {
                let c = wp.c(k).expect("k <= n");
                (!c.is_zero()).then(|| (k as i32, T::from_rational(c)))
            })
            .collect();
        let radius = match terms.last() {
            None => T::infinity(),
            Some(&(k, c)) => (T::from_f64(RADIUS_TOLERANCE) / c.abs()).powf(T::one() / T::from_f64(2.0 * k as f64)),
        };
        Ok(Self { g2: T::from_rational(curve.g2()), g3: T::from_rational(curve.g3()), terms, radius })
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn g2(&self) -> T {
        self.g2
    }

    pub fn g3(&self) -> T {
        self.g3
    }

    /// `(℘(w), ℘'(w))`.
    pub fn eval(&self, w: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let modulus = w.norm();
        if modulus.is_zero() {
            return Err(Error::Pole);
        }
        if !(modulus < self.radius) {
            return Err(Error::OutOfRadius {
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
                radius: self.radius.to_f64().unwrap_or(f64::NAN),
            });
        }
        let w2 = w * w;
        let inv = w.inv();
        let inv2 = inv * inv;
        // Σ c_k w^(2k-2) and Σ (2k-2) c_k w^(2k-3), by Horner in w^2.
        let mut wp_tail: Complex<T> = Complex::zero();
        let mut dwp_tail: Complex<T> = Complex::zero();
        let mut prev_k = self.terms.last().map_or(2, |&(k, _)| k);
        for &(k, c) in self.terms.iter().rev() {
            let hops = prev_k - k;
            let lift = w2.powi(hops);
            wp_tail = wp_tail * lift + c;
            dwp_tail = dwp_tail * lift + c * T::from_f64((2 * k - 2) as f64);
            prev_k = k;
        }
        // The lowest retained term is c_{k0} w^(2k0 - 2).
        let base = w2.powi(prev_k - 1);
        let wp = inv2 + wp_tail * base;
        let dwp = inv2 * inv * T::from_f64(-2.0) + dwp_tail * base * inv;
        Ok((wp, dwp))
    }

    /// `|y^2 - 4x^3 + g2 x + g3|`.
    pub fn residual(&self, x: Complex<T>, y: Complex<T>) -> T {
        let four = T::from_f64(4.0);
        (y * y - x * x * x * four + x * self.g2 + self.g3).norm()
    }

    /// [`residual`](Self::residual) divided by
    /// `|y|^2 + 4|x|^3 + |g2 x| + |g3|`, the scale of the rounding error in
    /// the individual terms.
    pub fn relative_residual(&self, x: Complex<T>, y: Complex<T>) -> T {
        let four = T::from_f64(4.0);
        let scale = y.norm_sqr() + four * x.norm().powi(3) + (x * self.g2).norm() + self.g3.abs();
        if scale.is_zero() {
            return T::zero();
        }
        self.residual(x, y) / scale
    }
}

/// `(℘(w), ℘'(w))` from `c_2..=c_n`.
pub fn eval_wp<T: Real>(curve: &Curve, w: Complex<T>, n: usize) -> Result<(Complex<T>, Complex<T>)> {
    WpEvaluator::new(curve, n)?.eval(w)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamResult<T = f64> {
    pub z: Complex<T>,
    pub q: Complex<T>,
    pub f: Complex<T>,
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    /// `|β^2 - 4α^3 + g2 α + g3|`.
    pub residual: T,
    /// `residual / (|β|^2 + 4|α|^3 + |g2 α| + |g3|)`.
    pub relative_residual: T,
    /// Modulus of the last nonzero term of the `F` partial sum; heuristic only.
    pub truncation_estimate: T,
    pub precision_bits: u32,
}

/// Evaluates the parametrization at `z` for a fixed curve and logarithm.
pub struct Parametrization<'a, T> {
    fl: &'a FormalLog,
    wp: WpEvaluator<T>,
    nmax: usize,
}

impl<'a, T: Real> Parametrization<'a, T> {
    pub fn new(curve: &Curve, fl: &'a FormalLog, nmax: usize, n: usize) -> Result<Self> {
        if *curve != fl.curve {
            return Err(Error::Domain("formal logarithm belongs to a different curve".into()));
        }
        check_nmax(fl, nmax)?;
        Ok(Self { fl, wp: WpEvaluator::new(curve, n)?, nmax })
    }

    pub fn wp(&self) -> &WpEvaluator<T> {
        &self.wp
    }

    pub fn point(&self, z: Complex<T>) -> Result<ParamResult<T>> {
        let q = nome(z)?;
        let (f, truncation_estimate) = eval_f(self.fl, z, self.nmax)?;
        let (alpha, beta) = self.wp.eval(f)?;
        Ok(ParamResult {
            z,
            q,
            f,
            alpha,
            beta,
            residual: self.wp.residual(alpha, beta),
            relative_residual: self.wp.relative_residual(alpha, beta),
            truncation_estimate,
            precision_bits: T::PRECISION_BITS,
        })
    }

    pub fn derivative_check(&self, z: Complex<T>, h: T) -> Result<DerivativeReport<T>> {
        let step = Complex::new(h, T::zero());
        let plus = self.point(z + step)?;
        let minus = self.point(z - step)?;
        let center = self.point(z)?;
        let finite_difference = (plus.alpha - minus.alpha) / (step * T::from_f64(2.0));
        let chain_rule = center.beta * two_pi_i::<T>() * cusp_form(self.fl, z, self.nmax)?;
        let relative_deviation = (finite_difference - chain_rule).norm() / chain_rule.norm();
        Ok(DerivativeReport { h, finite_difference, chain_rule, relative_deviation })
    }
}

/// `α(z) = ℘(F(z))`, `β(z) = ℘'(F(z))` with the curve residual.
pub fn param_point<T: Real>(
    curve: &Curve,
    fl: &FormalLog,
    z: Complex<T>,
    nmax: usize,
    n: usize,
) -> Result<ParamResult<T>> {
    Parametrization::new(curve, fl, nmax, n)?.point(z)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeReport<T = f64> {
    pub h: T,
    /// `(α(z+h) - α(z-h)) / 2h`.
    pub finite_difference: Complex<T>,
    /// `β(z) · 2πi f(z)`.
    pub chain_rule: Complex<T>,
    pub relative_deviation: T,
}

/// Compares a central difference of `α` with the chain rule
/// `α'(z) = ℘'(F(z)) F'(z) = β(z) · 2πi f(z)`.
pub fn derivative_check<T: Real>(
    curve: &Curve,
    fl: &FormalLog,
    z: Complex<T>,
    h: T,
    nmax: usize,
    n: usize,
) -> Result<DerivativeReport<T>> {
    Parametrization::new(curve, fl, nmax, n)?.derivative_check(z, h)
}
