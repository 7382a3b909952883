use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("divisor has zero constant term")]
    NonUnitDivisor,
    #[error("inner series of a composition must have zero constant term")]
    CompositionDomain,
    #[error("reversion needs f(0) = 0 and f'(0) = 1")]
    ReversionDomain,
    #[error("series order {available} is too low, need {needed}")]
    OrderTooLow { needed: usize, available: usize },
    #[error("singular curve: discriminant g2^3 - 27 g3^2 vanishes")]
    SingularCurve,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("prime {0} is not supported (need p >= 5)")]
    UnsupportedPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} exceeds the point-counting cap {cap}")]
    PrimeTooLarge { p: u64, cap: u64 },
    #[error("z must lie in the upper half-plane (Im z = {0})")]
    HalfPlane(f64),
    #[error("℘ has a pole at w = 0")]
    Pole,
    #[error("|w| = {modulus} is outside the reliability radius {radius} of the truncated ℘ series")]
    OutOfRadius { modulus: f64, radius: f64 },
}
