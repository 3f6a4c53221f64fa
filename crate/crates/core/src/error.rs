//! Error type shared by every module of the engine.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pole: denominator vanishes at {0}")]
    Pole(String),

    #[error("zero base raised to a negative power (min exponent {0})")]
    ZeroBase(i64),

    #[error("degenerate Pochhammer factor: {0}")]
    Degenerate(String),

    #[error("element is not a unit; gcd with modulus is {gcd}")]
    NonUnit { gcd: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("non-integral exponent: {0}")]
    Integrality(String),

    #[error("value not representable in the coefficient field: {0}")]
    NotRepresentable(String),

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("denominator divisible by p = {0}")]
    DenominatorDivisibleByP(u64),

    #[error("resampling exhausted after {0} degenerate samples")]
    ResampleExhausted(usize),

    #[error("internal: {0}")]
    Internal(String),
}
