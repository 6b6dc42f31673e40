use thiserror::Error;

/// Errors produced by the algebra, matrix and construction routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("square of a generator must be +1 or -1, got {0}")]
    InvalidSquare(i64),

    #[error("invalid sign value {0}, expected +1 or -1")]
    InvalidSign(i64),

    #[error("presentation needs at least one generator")]
    EmptyPresentation,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid amicability pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("argument must be positive")]
    ZeroArgument,

    #[error("character has length {found}, expected {expected}")]
    CharacterLength { expected: usize, found: usize },

    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),

    #[error("resource cap exceeded: {what} = {value} > {cap}")]
    ResourceCap {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
