//! Closed-form design formulas for the gate parameters.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, open_unit, Result};
use crate::gate::GateConfig;

/// Large-N parameter laws for a target error probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticParams {
    pub epsilon: f64,
    pub xi_one: f64,
    pub xi_two: f64,
}

impl AsymptoticParams {
    pub fn kappa(&self) -> f64 {
        self.xi_two / self.xi_one
    }

    /// Gate with these parameters; fails when `epsilon >= pi/2` (N = 1).
    pub fn to_config(&self, segments: usize) -> Result<GateConfig> {
        GateConfig::new(segments, self.epsilon, self.xi_one, self.xi_two)
    }
}

/// `epsilon = pi/(sqrt(2) N)`, `xi_one = 2P/N`, `xi_two = pi^2/(N P)`.
pub fn asymptotic_params(p_error: f64, segments: usize) -> Result<AsymptoticParams> {
    let p = open_unit("p_error", p_error)?;
    if segments == 0 {
        return Err(invalid("segments", 0.0, "at least one segment is required"));
    }
    let n = segments as f64;
    Ok(AsymptoticParams {
        epsilon: PI / (SQRT_2 * n),
        xi_one: 2.0 * p / n,
        xi_two: PI * PI / (n * p),
    })
}

/// Required absorption ratio `kappa = pi^2 / (2 P^2)`.
pub fn kappa_required(p_error: f64) -> Result<f64> {
    let p = open_unit("p_error", p_error)?;
    Ok(PI * PI / (2.0 * p * p))
}

/// Error of the reference scheme with absorbers in all rails:
/// `4 N xi_one + 2 pi^2 / (N xi_two)`.
///
/// This is a design formula; the value can exceed one and is returned raw.
pub fn franson_error(segments: usize, xi_one: f64, xi_two: f64) -> Result<f64> {
    if segments == 0 {
        return Err(invalid("segments", 0.0, "at least one segment is required"));
    }
    if !(xi_one >= 0.0) {
        return Err(invalid("xi_one", xi_one, "must be non-negative"));
    }
    if !(xi_two > 0.0) {
        return Err(domain("xi_two", xi_two, "the 1/xi_two term diverges unless xi_two > 0"));
    }
    let n = segments as f64;
    Ok(4.0 * n * xi_one + 2.0 * PI * PI / (n * xi_two))
}

/// Per-pass exponent for an absorption probability: `-ln(1 - p) / 2`.
pub fn xi_from_absorption_prob(p_abs: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p_abs) {
        return Err(domain("p_abs", p_abs, "absorption probability must lie in [0, 1)"));
    }
    Ok(-(-p_abs).ln_1p() / 2.0)
}

/// Inverse of [`xi_from_absorption_prob`]: `1 - e^{-2 xi}`.
pub fn absorption_prob_from_xi(xi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(domain("xi", xi, "absorber exponent must be non-negative"));
    }
    Ok(-(-2.0 * xi).exp_m1())
}

/// Absorption ratio implied by per-segment probabilities:
/// `ln(1 - p_two) / ln(1 - p_one)`.
pub fn kappa_from_segment_probs(p_two: f64, p_one: f64) -> Result<f64> {
    open_unit("p_two", p_two)?;
    open_unit("p_one", p_one)?;
    if p_one > p_two {
        return Err(domain("p_one", p_one, "one-photon probability must not exceed p_two"));
    }
    Ok((-p_two).ln_1p() / (-p_one).ln_1p())
}
