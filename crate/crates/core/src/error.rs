use thiserror::Error;

/// Malformed text encodings (rationals, weight vectors, curves, shapes, divisors).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational `{0}` (expected p/q or p)")]
    Rational(String),
    #[error("invalid curve class `{0}`: {1}")]
    Curve(String, String),
    #[error("invalid curve shape `{0}`: {1}")]
    Shape(String, String),
    #[error("invalid symmetric divisor `{0}`: {1}")]
    Divisor(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Inconsistent sizes or a violated calling precondition.
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// A solved system disagrees with the published closed form.
    #[error("closed form mismatch for {context}: expected {expected}, computed {computed}")]
    ClosedFormMismatch {
        context: String,
        expected: String,
        computed: String,
    },
    /// A certificate failed its own verification.
    #[error("certificate error: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
