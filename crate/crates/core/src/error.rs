use thiserror::Error;

/// Failure modes shared by every numerical entry point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates the mathematical domain of the routine.
    #[error("{name} = {value} is outside the domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The request is valid mathematically but beyond what this implementation supports.
    #[error("{name} = {value} exceeds the supported limit {limit}")]
    Capability {
        name: &'static str,
        value: f64,
        limit: f64,
    },

    /// An iterative or adaptive evaluation stopped before meeting its tolerance.
    #[error("{what} did not converge: partial value {partial}, estimated error {est_error:e}")]
    NotConverged {
        what: &'static str,
        partial: f64,
        est_error: f64,
    },

    /// An integrand or intermediate quantity became NaN or infinite.
    #[error("{what} produced a non-finite value at {at}")]
    NonFinite { what: &'static str, at: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        reason,
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(domain(name, value, "must be finite"))
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    require_finite(name, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(domain(name, value, "must be non-negative"))
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    require_finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(domain(name, value, "must be positive"))
    }
}
