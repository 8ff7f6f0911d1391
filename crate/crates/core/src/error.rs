use thiserror::Error;

/// Errors raised by graph construction, parsing, enumeration and search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input. `offset` is the byte offset within the line.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A family or graph parameter outside its domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The request exceeds a built-in size limit.
    #[error("capability limit: {what} supports n <= {limit}, got n = {n}")]
    Capability {
        what: &'static str,
        limit: usize,
        n: usize,
    },

    /// The operation needs a connected graph.
    #[error("graph is disconnected; apply {0} to each component separately")]
    Disconnected(&'static str),

    /// A graph in a stream has a different order than the first one.
    #[error("line {line}: graph has {found} vertices, stream order is {expected}")]
    MixedOrder {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, limit: usize, n: usize) -> Result<()> {
    if n > limit {
        Err(Error::Capability { what, limit, n })
    } else {
        Ok(())
    }
}
