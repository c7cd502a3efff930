use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller violated an operation's contract (shape, ring mismatch, bad parameter).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The instance falls outside the supported family (e.g. non-principal or unit H^0 ideal).
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),

    /// A configured size budget was exceeded; the transcript records how far the work got.
    #[error("resource limit exceeded: {reason}")]
    ResourceLimit { reason: String, transcript: Vec<String> },

    /// A constructed object failed an internal invariant check (d∘d ≠ 0, non-commuting map, ...).
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
