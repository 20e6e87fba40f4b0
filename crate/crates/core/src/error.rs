use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition (parity, bounds, shape).
    #[error("rejected input: {0}")]
    Rejected(String),

    /// A cache file line could not be parsed at all.
    #[error("cache line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A cache file line parsed but describes an impossible record.
    #[error("cache line {line}: rejected record: {message}")]
    Record { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn rejected(message: impl Into<String>) -> Self {
        Error::Rejected(message.into())
    }
}
