use thiserror::Error;

pub type Result<T> = std::result::Result<T, RecsumError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecsumError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A sequence was evaluated at an index where it has no value.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index out of range: {0}")]
    Range(String),
    /// A configured guard would be exceeded; the caller may retry with a larger guard.
    #[error("resource guard exceeded: {what} needs {required}, limit is {limit}")]
    Resource {
        what: String,
        required: String,
        limit: String,
    },
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
}

impl RecsumError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        RecsumError::InvalidInput(msg.into())
    }

    /// Process exit code shared by every CLI command.
    pub fn exit_code(&self) -> i32 {
        match self {
            RecsumError::InvalidInput(_) | RecsumError::Domain(_) | RecsumError::Range(_) => 2,
            RecsumError::IdentityFailure(_) => 3,
            RecsumError::Resource { .. } => 4,
        }
    }
}
