use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solver failed to converge: {message}")]
    Convergence {
        message: String,
        /// Best value reached by any start, if any start produced one.
        best_value: Option<f64>,
        /// Smallest projected-gradient norm reached across starts.
        best_gradient_norm: Option<f64>,
        iterations: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
