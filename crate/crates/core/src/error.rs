use formslab::FormError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BofillError {
    #[error("boundary count must be at least 1 (closed surfaces are not supported)")]
    ClosedSurface,
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },
    #[error("curve has {found} coordinates, surface has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("surface has genus {0}; planar operations need genus 0")]
    NotPlanar(usize),
    #[error("letter {0} has no boundary-subset encoding")]
    MissingSubset(usize),
    #[error("word syntax error at byte {position}: {message}")]
    WordSyntax { position: usize, message: String },
    #[error("division by zero: N + a_{index} = 0")]
    DivisionByZero { index: usize },
    #[error(transparent)]
    Form(#[from] FormError),
}

pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> BofillError {
    BofillError::Invalid {
        field: field.to_string(),
        reason: reason.into(),
    }
}

pub type Result<T> = std::result::Result<T, BofillError>;
