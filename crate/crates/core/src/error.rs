use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("lowest degree of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("invalid factor modulus {modulus}: {reason}")]
    InvalidModulus { modulus: String, reason: &'static str },

    #[error("values belong to different extensions ({left} vs {right})")]
    HandleMismatch { left: String, right: String },

    #[error("{0}")]
    Usage(String),

    #[error("matrix is singular (determinant is 0)")]
    Singular,

    #[error("index {k} is below the validity threshold {threshold}")]
    BelowThreshold { k: i64, threshold: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
