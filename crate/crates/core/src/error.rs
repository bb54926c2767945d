use thiserror::Error;

use crate::series::SeriesKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible series: {left} and {right}")]
    KindMismatch { left: SeriesKind, right: SeriesKind },

    #[error("inner series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("index {index} out of range for truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("coefficient {index} is not an integer ({value})")]
    NonIntegerCoefficient { index: usize, value: String },

    #[error("requested n = {requested} exceeds the available bound {limit}")]
    BoundExceeded { requested: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
