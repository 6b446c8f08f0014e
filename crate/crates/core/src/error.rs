use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants are grouped so a command-line front end can map them onto
/// exit codes: parse and validation problems are input errors, precondition
/// failures mean the request is well-formed but not applicable.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("encoding inconsistency: {0}")]
    Encoding(String),
    #[error("group construction failed: {0}")]
    Group(String),
    #[error("size limit exceeded: {0}")]
    Size(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
