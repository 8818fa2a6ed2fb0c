use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the physical or mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Inconsistent or invalid configuration (grids, step sizes, windows).
    #[error("configuration error: {0}")]
    Config(String),
    /// A numerical procedure failed to meet its accuracy or stability target.
    #[error("numerical failure: {message}")]
    Numerical {
        message: String,
        /// Best error estimate achieved, when one exists.
        estimate: Option<f64>,
    },
    /// The object is not in a usable state yet (e.g. an uncalibrated model).
    #[error("invalid state: {0}")]
    State(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed data: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn numerical(message: impl Into<String>, estimate: Option<f64>) -> Self {
        Error::Numerical { message: message.into(), estimate }
    }

    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical { .. })
    }
}
