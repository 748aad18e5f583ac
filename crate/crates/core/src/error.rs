use thiserror::Error;

use crate::blossom::ParameterValidity;

pub type Result<T, E = PqError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PqError {
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("blossom undefined: violated restrictions {0}")]
    BlossomUndefined(ParameterValidity),

    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid split parameter: {0}")]
    InvalidSplit(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("audit requires exact arithmetic")]
    ExactRequired,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid document: {0}")]
    Document(String),
}
