use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation at a pole: the gamma function at a non-positive integer, or a
    /// resolvent prefactor whose denominator vanishes.
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Spectral parameter outside the open gap (0, 2mc^2).
    #[error("spectral parameter outside the gap: {0}")]
    Gap(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("boundary data incompatible with the supersymmetric extension: {0}")]
    Supersymmetry(String),

    #[error("spectral parameter {lambda} collides with gap eigenvalue {eigenvalue} at c = {c}")]
    EigenvalueCollision { lambda: f64, eigenvalue: f64, c: f64 },

    #[error("no gap eigenvalue found at c = {c}")]
    MissingEigenvalue { c: f64 },

    /// A physical or numerical parameter violates a documented bound.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
