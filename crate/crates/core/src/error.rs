use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The configuration violates one or more admissibility rules.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested fast path does not apply to these parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("numeric failure: {message} (achieved error estimate {achieved:e})")]
    Numeric { message: String, achieved: f64 },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("placement failed: {0}")]
    Placement(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
