use thiserror::Error;

use crate::field::FieldTag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VestError {
    #[error("mixed fields: {0} vs {1}")]
    MixedField(FieldTag, FieldTag),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field {0} is infinite and cannot be enumerated")]
    InfiniteField(FieldTag),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("instance variant mismatch: {0}")]
    Variant(String),
    #[error("construction unsupported over {field}: {reason}")]
    UnsupportedField { field: FieldTag, reason: String },
    #[error("enumeration budget exceeded: needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("word {0:?} contains a symbol outside {{0,1}}")]
    Alphabet(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = VestError> = std::result::Result<T, E>;

impl VestError {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        VestError::Shape(msg.into())
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        VestError::Malformed(msg.into())
    }
}
