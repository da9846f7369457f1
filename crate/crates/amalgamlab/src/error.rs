use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("scope exceeded: {0}")]
    Scope(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("set is not invariant under the group")]
    NotInvariant,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("catalog data: {0}")]
    Data(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 2,
            Error::Scope(_) => 3,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
