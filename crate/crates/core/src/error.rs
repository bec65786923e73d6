use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid root data: {0}")]
    InvalidRootData(String),

    #[error("simple roots do not form a base: {0}")]
    NotABase(String),

    #[error("non-crystallographic pairing: {0}")]
    NonCrystallographic(String),

    #[error("reflection closure exceeds {bound} roots")]
    UnboundedClosure { bound: usize },

    #[error("root {0} is neither a nonnegative nor a nonpositive combination of simple roots")]
    InconsistentPositivity(String),

    #[error("invalid signature pattern: {0}")]
    InvalidPattern(String),

    #[error("operation requires a type A root system")]
    NotTypeA,

    #[error("compact subsystem does not belong to this root system")]
    ForeignCompactSubsystem,

    #[error("invalid compact root set: {0}")]
    InvalidCompactSet(String),

    #[error("Weyl group has more than {bound} elements")]
    SizeBound { bound: usize },

    #[error("length gap must be {expected}, found {found}")]
    LengthGap { expected: usize, found: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("subset violates the zero-or-two condition: {0}")]
    StarViolation(String),

    #[error("character is not integral: {0}")]
    NotIntegral(String),

    #[error("shifted character is not dominant: {0}")]
    NotDominant(String),

    #[error("signature ({a},{b}) is not quasi-split")]
    NotQuasiSplit { a: usize, b: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
