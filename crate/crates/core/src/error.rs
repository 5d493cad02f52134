use thiserror::Error;

/// Errors raised by constructors and checkers across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two grid-based objects do not share a support grid, or dimensions disagree.
    #[error("shape error: {0}")]
    Shape(String),

    /// A descriptor could not be turned into a valid object.
    #[error("construction error: {0}")]
    Construction(String),

    /// A query went beyond what a finite prefix can answer.
    #[error("horizon error: {0}")]
    Horizon(String),
}

pub type Result<T> = std::result::Result<T, Error>;
