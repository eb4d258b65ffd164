use thiserror::Error;

use crate::exact::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed fields: {0} and {1}")]
    MixedFields(Field, Field),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("not enough blocks: target needs {needed}, element has {available}")]
    NotEnoughBlocks { needed: usize, available: usize },
    #[error("no specializer found ({examined} candidates examined); this is not a disproof")]
    NotFound { examined: u64 },
    #[error("maximal element too shallow: level {needed} required, {available} available")]
    DepthExceeded { needed: usize, available: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}
