use thiserror::Error;

use crate::series::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus mismatch: {left:?} vs {right:?}")]
    ModulusMismatch { left: Ring, right: Ring },

    #[error("integer overflow in exact arithmetic at coefficient {index}")]
    IntegerOverflow { index: usize },

    #[error("constant term {value} is not a unit in {ring:?}")]
    NonUnitConstantTerm { value: i128, ring: Ring },

    #[error("invalid modulus {0}: expected 0 (exact) or 2..=2^62")]
    InvalidModulus(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is too small (need p >= 5)")]
    PrimeTooSmall(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{a} is not invertible modulo {modulus}")]
    NotInvertible { a: i128, modulus: u64 },

    #[error("unsupported copartition parameters (a={a}, b={b}, m={m}): {reason}")]
    UnsupportedParams { a: u64, b: u64, m: u64, reason: &'static str },

    #[error("offset numerator {numerator} is not divisible by {divisor}")]
    NonIntegralOffset { numerator: i128, divisor: i128 },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
