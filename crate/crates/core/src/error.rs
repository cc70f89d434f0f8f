use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The operation has no meaning for this input (e.g. primitivity over a
    /// one-letter alphabet).
    #[error("not applicable: {0}")]
    NotApplicable(String),
    /// A word has no factorization over the code.
    #[error("word {0} is not in X*")]
    NotInStar(String),
    /// A configured bound was hit before the computation could finish.
    #[error("resource limit: {what}")]
    ResourceLimit { what: String, partial: Option<usize> },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn not_applicable(msg: impl Into<String>) -> Self {
        Error::NotApplicable(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, partial: Option<usize>) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            partial,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
