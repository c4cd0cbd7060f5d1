use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    /// An operation was applied outside the inputs it is defined for.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size cap was exceeded; `cap` is the configured limit.
    #[error("resource limit exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: u64 },

    #[error("exponent overflow")]
    Overflow,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Two computations that must agree did not.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            cap,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
