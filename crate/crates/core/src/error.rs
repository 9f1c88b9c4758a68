use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded { what: String, size: usize, cap: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("subgroup is not normal in its parent")]
    NotNormal,

    #[error("H not K-stable")]
    NotStable,

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("iteration budget exceeded: {needed} > {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("coset enumeration of {instance} did not complete within {cap} cosets")]
    Enumeration { instance: String, cap: usize },

    #[error("presentation is not enumerable over the trivial subgroup: {0}")]
    Infinite(String),

    /// A mathematical invariant failed to hold. Always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
