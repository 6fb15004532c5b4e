use thiserror::Error;

/// Byte range into a parsed source string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("operation is undefined on the zero element")]
    ZeroElement,
    #[error("term `{term}` has total degree {degree}, expected {expected}")]
    NotHomogeneous { term: String, degree: i64, expected: i64 },
    #[error("unknown generator `{name}` at {span}")]
    UnknownGenerator { name: String, span: Span },
    #[error("parse error at {span}: {message}")]
    Parse { message: String, span: Span },
    #[error("elements belong to different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("element is not a unit; kernel witness {witness}")]
    NotAUnit { witness: String },
    #[error("inverse exists over the coefficient field but is not a finite sum")]
    NonFiniteInverse,
    #[error("invalid complex dimension {0}")]
    InvalidDimension(i64),
    #[error("coefficient mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("intersection pairing is degenerate")]
    DegeneratePairing,
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("ring `{0}` is not a product of projective spaces")]
    NotAProductOfProjectiveSpaces(String),
    #[error("element `{0}` has non-integral coefficients")]
    NotIntegral(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown ring id `{0}`")]
    UnknownRing(String),
}

pub type Result<T> = std::result::Result<T, Error>;
