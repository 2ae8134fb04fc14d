use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {q} exceeds the capacity limit {limit}")]
    CapacityExceeded { q: u64, limit: u64 },

    #[error("discrete logarithm of zero is undefined")]
    LogOfZero,

    #[error("potent exponent must be at least 2, got {0}")]
    InvalidExponent(u64),

    #[error("sets live in different fields (order {0} vs order {1})")]
    FieldMismatch(u64, u64),

    #[error("character order {d} must be at least 2 and divide q - 1 = {qm1}")]
    BadOrder { d: u64, qm1: u64 },

    #[error("duplicate root in character-sum root list")]
    DuplicateRoots,

    #[error("character sum exceeds the 128-bit accumulator")]
    Overflow,

    #[error("element index {index} is out of range for a field of order {q}")]
    IndexOutOfRange { index: u64, q: u64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed record or checkpoint: {0}")]
    Malformed(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
