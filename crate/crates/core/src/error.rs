use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("incomplete factorization: cofactor {0} could not be certified")]
    IncompleteFactorization(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
