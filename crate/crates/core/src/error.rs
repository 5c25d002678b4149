use std::io;

use thiserror::Error;

/// Errors raised by the bound evaluators, oracles and code search.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function being evaluated.
    #[error("domain error: {0}")]
    Domain(String),
    /// A caller-side precondition (a theorem hypothesis, a graph property) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested object would exceed a size or time cap.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A sweep or CLI configuration is inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// A text file (encoder table, graph dump) could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
