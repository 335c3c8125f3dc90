use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Parameters outside the range the construction is defined for.
    #[error("input domain: {0}")]
    InputDomain(String),

    /// An internal invariant of the construction was violated. This is a bug,
    /// not bad input.
    #[error("construction contract violated: {0}")]
    ConstructionContract(String),

    #[error("insufficient precision: radius {radius:e} exceeds tolerance {tolerance:e} at {precision_bits} bits")]
    InsufficientPrecision {
        precision_bits: u64,
        radius: f64,
        tolerance: f64,
    },

    #[error("precision exhausted: no separation up to {ceiling_bits} bits")]
    PrecisionExhausted { ceiling_bits: u64 },

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable kebab-case name for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InputDomain(_) => "input-domain",
            Error::ConstructionContract(_) => "construction-contract",
            Error::InsufficientPrecision { .. } => "insufficient-precision",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::SearchExhausted(_) => "search-exhausted",
            Error::Domain(_) => "domain",
        }
    }
}
