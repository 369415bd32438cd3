use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid physical or run configuration input.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quadrature or series could not certify the requested accuracy.
    #[error("accuracy not reached: {0}")]
    Accuracy(String),
    /// A series hit its term cap before meeting its tolerance.
    #[error("term cap exceeded: {0}")]
    CapExceeded(String),
    /// Extrapolation residual above the convergence threshold.
    #[error("extrapolation did not converge: {0}")]
    NonConvergence(String),
    /// Operation not defined for the requested model/configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
