use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("partition is not in the category: {0}")]
    NotInCategory(String),
    #[error("partition is not projective: {0}")]
    NotProjective(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not a subcategory: {0}")]
    NotASubcategory(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("normalization failed: {0}")]
    NormalizationFailure(String),
    #[error("polynomial degree {0} is above two")]
    DegreeTooHigh(u32),
    #[error("row is empty: {0}")]
    EmptyRow(String),
    #[error("input too small: {0}")]
    InputTooSmall(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("category is not non-crossing: {0}")]
    NotNonCrossing(String),
    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
