use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma pole hit. `location` is the argument (or s) where it sits.
    #[error("pole at {location}{}", factor.as_ref().map(|f| format!(" (factor {f})")).unwrap_or_default())]
    Pole { location: f64, factor: Option<String> },

    #[error("validation error: {0}")]
    Validation(String),

    /// The form cannot be the moment function of a random variable.
    #[error("invalid form: {0}")]
    InvalidForm(String),

    #[error("strips do not intersect in an open interval: ({lo}, {hi})")]
    EmptyStrip { lo: f64, hi: f64 },

    #[error("unknown distribution '{0}'")]
    UnknownEntry(String),

    #[error("parameter error for {entry}: {message}")]
    Parameter { entry: String, message: String },

    #[error("{0}")]
    Unrepresentable(String),

    #[error("s = {s} outside the safe range ({lo}, {hi}): {reason}")]
    OutsideStrip { s: f64, lo: f64, hi: f64, reason: String },

    #[error("inversion unsupported: {0}")]
    InversionUnsupported(String),

    #[error("not available: {0}")]
    NotAvailable(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid factor reference: {0}")]
    FactorRef(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(entry: &str, message: impl Into<String>) -> Self {
        Error::Parameter { entry: entry.to_string(), message: message.into() }
    }

    /// True for errors caused by the mathematics of the request (poles,
    /// strips, unsupported inversions) rather than by malformed input.
    pub fn is_math_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::InvalidForm(_)
                | Error::EmptyStrip { .. }
                | Error::OutsideStrip { .. }
                | Error::InversionUnsupported(_)
                | Error::Quadrature(_)
                | Error::NotAvailable(_)
        )
    }
}
