use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least {min}, got {got}")]
    ModulusTooSmall { min: u32, got: BigUint },

    #[error("{0} is not prime")]
    NotPrime(BigUint),

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("divisor is the zero polynomial modulo {0}")]
    ZeroDivisor(BigUint),

    #[error("divisor is not monic modulo {0}")]
    NotMonic(BigUint),

    #[error("duplicate prime {0} in CRT parts")]
    DuplicatePrime(u64),

    #[error("no parts given")]
    Empty,

    #[error("cannot factor {0}: cofactor is composite and beyond trial division")]
    Unfactorable(BigUint),

    #[error("{what} is too large: {detail}")]
    TooLarge { what: &'static str, detail: String },

    #[error("{count} polynomials exceed the cap of {cap}")]
    CapExceeded { count: String, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
