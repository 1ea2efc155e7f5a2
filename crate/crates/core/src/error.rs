use thiserror::Error;

/// Errors raised by the gate model, the oracle, the optimizer and the rate formulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("`{quantity}` = {value} is outside its domain: {reason}")]
    Domain {
        quantity: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no feasible gate parameters for N = {segments} at target error {target_error}")]
    Infeasible { segments: usize, target_error: f64 },

    #[error("post-selection probability {probability:e} is too small to renormalize")]
    Degenerate { probability: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}

pub(crate) fn domain(quantity: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Domain {
        quantity,
        value,
        reason,
    }
}

/// Checks that `p` is a probability strictly between 0 and 1.
pub(crate) fn open_unit(quantity: &'static str, p: f64) -> Result<f64> {
    if p.is_finite() && p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(domain(quantity, p, "must lie in the open interval (0, 1)"))
    }
}
