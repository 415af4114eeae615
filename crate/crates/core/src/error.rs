use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix does not satisfy precondition: {0}")]
    Precondition(String),
    #[error("drawing is not in general position: {0}")]
    GeneralPosition(String),
    #[error("target parity matrix is not compatible with the graph")]
    Incompatible,
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("surface layout failed: {0}")]
    Layout(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
