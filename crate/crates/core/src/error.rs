use thiserror::Error;

/// Errors raised by constructions whose preconditions or structural
/// requirements do not hold. Axiom violations are never errors; they are
/// reported through [`crate::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("index {index} out of range for a carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size {size} exceeds the element bound {bound}; raise the bound explicitly to continue")]
    BoundExceeded { size: usize, bound: usize },
    #[error("induced operation is not well defined: {0}")]
    IllDefined(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(index: usize, size: usize) -> Result<()> {
    if index < size {
        Ok(())
    } else {
        Err(Error::OutOfRange { index, size })
    }
}
