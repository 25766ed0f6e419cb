use thiserror::Error;

/// Errors raised by ring construction, parsing and polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid coefficient literal `{0}`")]
    BadCoefficient(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("negative exponent {0}")]
    NegativePower(i64),
    #[error("expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u32),
    #[error("invalid coefficient field `{0}`")]
    InvalidField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("malformed ideal file: {0}")]
    BadIdealFile(String),
}
