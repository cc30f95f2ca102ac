use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("multiplicity mismatch: expected {expected}, found {found}")]
    Multiplicity { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular: {0}")]
    Singular(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
}
