use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix or vector dimensions do not fit the operation.
    #[error("shape error: {0}")]
    Shape(String),
    /// Input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A monomial substitution produced a negative exponent where a polynomial was required.
    #[error("chart error: {0}")]
    Chart(String),
    /// A configured budget was exhausted.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Two cones of a would-be fan meet in something that is not a common face.
    #[error("fan axiom violated: {0}")]
    FanAxiom(Box<crate::polyhedra::FanViolation>),
    /// A computed object failed an internal consistency check.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
