use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("enumeration of {count} points exceeds the cap of {cap}")]
    EnumerationTooLarge { count: u128, cap: u64 },

    #[error("ideal lattice exceeds the cap of {cap} ideals")]
    LatticeTooLarge { cap: usize },

    #[error("algebra is not a verified Hom-Lie algebra: {0}")]
    NotVerified(String),

    #[error("not a Hom-subalgebra: {0}")]
    NotASubalgebra(String),

    #[error("not a Hom-ideal: {0}")]
    NotAnIdeal(String),

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// A structural assertion that should hold by theory did not. Always a
    /// finding worth reporting, never a recoverable condition.
    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("unknown check id {0:?}")]
    UnknownCheck(String),

    #[error("generator budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
