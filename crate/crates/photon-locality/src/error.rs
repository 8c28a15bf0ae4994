//! Crate-wide error type and exit-code conventions.

use thiserror::Error;

/// Errors produced by spectral, mode, Fock-space, and CLI operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The input sits on a degenerate manifold where the requested quantity is
    /// undefined (for example a spectrum with `eta = 1/2`).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A Fock-space cutoff is too small to meet the requested tail bound.
    #[error("truncation too small: {0}")]
    Truncation(String),
    /// A numerical accuracy gate failed, e.g. the Parseval check on a grid
    /// too coarse for the pulse it is asked to resolve.
    #[error("accuracy gate failed: {0}")]
    Accuracy(String),
    /// The requested evaluation method is not available.
    #[error("unsupported method: {0}")]
    Unsupported(String),
    /// Filesystem failure while reading configuration or writing artifacts.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for this error class: 64 for usage/parameter errors,
    /// 65 for data errors (degenerate input, inadequate truncation, failed
    /// accuracy gates), 74 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::Unsupported(_) => 64,
            Error::Degenerate(_) | Error::Truncation(_) | Error::Accuracy(_) => 65,
            Error::Io(_) => 74,
        }
    }
}

/// Shorthand for an `InvalidParameter` error with a formatted message.
macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidParameter(format!($($arg)*))
    };
}
pub(crate) use invalid;
