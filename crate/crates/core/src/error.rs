use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeoError {
    /// An argument lies outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// A word or isometry that should be hyperbolic has |trace| < 2.
    #[error("elliptic element (trace {trace}); representation is not discrete")]
    Elliptic { trace: f64 },

    /// Pants graph and coordinates do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    /// Not enough data for a least-squares fit.
    #[error("fit error: {0}")]
    Fit(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A search hit its budget before reaching a certified answer.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, GeoError>;

impl From<std::io::Error> for GeoError {
    fn from(e: std::io::Error) -> Self {
        GeoError::Io(e.to_string())
    }
}
