use thiserror::Error;

/// Errors raised by constructors, validation and file handling.
///
/// Numerical trouble (non-convergent quadrature) is never an error: it is
/// reported through the `converged` flag of a result or an `Undetermined`
/// verdict.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("dimension {0} is not supported by this operation (needs d in {{2, 3}})")]
    UnsupportedDimension(usize),

    #[error("{field}: {message}")]
    Parse { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { field: field.into(), message: message.into() }
    }

    pub(crate) fn geometry(message: impl Into<String>) -> Self {
        Error::InvalidGeometry(message.into())
    }

    pub(crate) fn input(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
