use thiserror::Error;

/// Errors raised by space construction and the verification routines.
///
/// Axiom violations and failed certificates are *data* (reports and verdicts),
/// not errors; this type covers malformed inputs and searches that could not
/// produce a result at all.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("construction-time axiom check failed: {0}")]
    AxiomFailure(String),

    #[error("unknown tag `{0}`")]
    UnknownTag(String),

    #[error("no admissible value found: {0}")]
    NotFound(String),

    #[error("divisor vanishes at x = {at}")]
    ZeroDivisor { at: f64 },

    #[error("sequence has no detectable limit: {0}")]
    NoLimit(String),

    #[error("no witness found: {0}")]
    WitnessNotFound(String),

    #[error("operation requires a standard-family space: {0}")]
    UnsupportedFamily(String),

    #[error("input not certified: {0}")]
    InputNotCertified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// Checks `0 < value < 1`.
pub(crate) fn open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("{value} is not in (0, 1)")))
    }
}

/// Checks `value > 0` and finite.
pub(crate) fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("{value} is not a finite positive real")))
    }
}
