use thiserror::Error;

/// Errors raised by the exact-arithmetic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no content")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is not primitive")]
    NotPrimitive,
    #[error("polynomial is reducible over the rationals")]
    Reducible,
    #[error("negative input: {0}")]
    NegativeInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("isolating interval refinement did not converge after {0} rounds")]
    RefinementExhausted(usize),
    #[error("numeric certification failed below the {0}-bit precision cap")]
    PrecisionExhausted(u32),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
