use thiserror::Error;

/// Errors raised by the library.  Verification outcomes (a polynomial that
/// fails to annihilate, a bad co-tiler) are verdict values, not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("variable `{name}` is not available in dimension {dim}")]
    UnknownVariable { name: String, dim: usize },

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("zero vector not allowed here")]
    ZeroVector,

    #[error("not a line polynomial")]
    NotLine,

    #[error("non-integer coefficient")]
    NonInteger,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("configuration has no declared alphabet")]
    NoAlphabet,

    #[error("no anchors: the region is too small for the shape")]
    NoAnchors,

    #[error("search exhausted: {0}")]
    Inconclusive(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("{0}")]
    Descriptor(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
