use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A request exceeded a configured size cap (sieve limit, build cap, solver order cap).
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A value fell outside the range a table or integer width can represent.
    #[error("out of range: {0}")]
    Range(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Malformed graph or certificate input. `line` and `column` are 1-based; for
    /// single-line formats such as graph6 `column` is the byte offset.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
