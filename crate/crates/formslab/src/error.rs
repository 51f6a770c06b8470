use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("forms live on different charts")]
    ChartMismatch,
    #[error("degree {degree} exceeds chart dimension {dimension}")]
    DegreeOverflow { degree: usize, dimension: usize },
    #[error("expected a {expected}-form, found a {found}-form")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid multi-index {0:?}")]
    InvalidIndex(Vec<usize>),
    #[error("unknown axis '{0}'")]
    UnknownAxis(String),
    #[error("contact check needs an odd-dimensional chart, got dimension {0}")]
    EvenDimension(usize),
    #[error("contact check needs a 1-form, got a {0}-form")]
    NotOneForm(usize),
    #[error("Reeb system is singular at this point (|density| = {density:e})")]
    Singular { density: f64 },
    #[error("no Positive K in [{lo}, {hi}]")]
    NoPositiveK { lo: f64, hi: f64 },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("parse error at byte {position} in '{input}': {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("model file: {0}")]
    ModelFile(String),
}

pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> FormError {
    FormError::InvalidParameter {
        name: name.to_string(),
        reason: reason.into(),
    }
}
