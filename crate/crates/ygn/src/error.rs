//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A vector or matrix has the wrong dimensions for the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Structurally invalid input (asymmetric Gram matrix, inconsistent rank, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The arguments are outside the domain where the quantity is defined
    /// (for example an odd Euler number where an even one is required).
    #[error("out of domain: {0}")]
    OutOfDomain(String),
}

impl Error {
    pub fn dimension_mismatch(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn out_of_domain(msg: impl Into<String>) -> Self {
        Error::OutOfDomain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
