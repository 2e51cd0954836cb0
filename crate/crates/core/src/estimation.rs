//! Displacement estimation from a measured fractional power loss.
//!
//! Near-aligned post-selection keeps most of the light, yet the loss still
//! depends on the pointer overlap `γ`: `ΔP/P = ½(γ s − 1)` with
//! `s = sin 2α cos θ`. Given `α`, `θ` and the waist this inverts in closed
//! form, `Δ₋ = 2w₀ √(−ln γ)`. Only `|Δ₋|` is observable since the loss depends
//! on `Δ₋²`.

use crate::analytics::Contrast;
use crate::{Error, Result};

/// Smallest fractional loss a shot-noise-limited modulated detector resolves.
pub const DEFAULT_NOISE_FLOOR: f64 = 1e-7;

/// Slack allowed when rounding pushes the inferred overlap just above one.
const GAMMA_SLACK: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationInput {
    /// `ΔP/P_in`, in `[−1, 0]`.
    pub measured_fractional_loss: f64,
    pub alpha: f64,
    pub theta: f64,
    pub waist: f64,
    pub noise_floor: f64,
}

impl EstimationInput {
    pub fn new(measured_fractional_loss: f64, alpha: f64, theta: f64, waist: f64) -> Self {
        Self {
            measured_fractional_loss,
            alpha,
            theta,
            waist,
            noise_floor: DEFAULT_NOISE_FLOOR,
        }
    }

    pub fn with_noise_floor(mut self, noise_floor: f64) -> Self {
        self.noise_floor = noise_floor;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateReport {
    /// `|Δ₁ − Δ₂|` in meters.
    pub delta_minus: f64,
    pub gamma_inferred: f64,
    /// `d(ΔP/P)/dΔ₋` at the estimate, per meter.
    pub sensitivity: f64,
    /// Smallest resolvable `Δ₋` at the input's noise floor; `None` when the
    /// floor exceeds what any displacement can produce.
    pub min_detectable: Option<f64>,
}

/// `sin 2α cos θ`, evaluated exactly as the forward model does.
pub fn interference_contrast(alpha: f64, theta: f64) -> f64 {
    Contrast::new(alpha, theta).s
}

fn check_waist(waist: f64) -> Result<()> {
    if waist.is_finite() && waist > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "beam waist must be finite and positive, got {waist}"
        )))
    }
}

fn invertible_contrast(alpha: f64, theta: f64) -> Result<f64> {
    let s = interference_contrast(alpha, theta);
    if s > 0.0 {
        Ok(s)
    } else {
        Err(Error::NonInvertible(s))
    }
}

pub fn invert_fractional_loss(input: &EstimationInput) -> Result<EstimateReport> {
    check_waist(input.waist)?;
    let f = input.measured_fractional_loss;
    if !(-1.0..=0.0).contains(&f) {
        return Err(Error::OutOfRange(format!(
            "measured fractional loss {f} is outside [−1, 0]"
        )));
    }
    let s = invertible_contrast(input.alpha, input.theta)?;
    let c = Contrast::new(input.alpha, input.theta);

    // γ − 1 = (2f − (s − 1))/s, mirroring the forward evaluation
    let mut gamma_m1 = (2.0 * f - c.s_minus_one) / s;
    if gamma_m1 > 0.0 && gamma_m1 <= GAMMA_SLACK {
        gamma_m1 = 0.0;
    }
    let gamma_inferred = 1.0 + gamma_m1;
    if !(gamma_m1 > -1.0 && gamma_m1 <= 0.0) {
        return Err(Error::OutOfRange(format!(
            "loss {f} implies pointer overlap γ = {gamma_inferred}, outside (0, 1]; \
             the measurement is inconsistent with a lossless displacement coupling"
        )));
    }
    let delta_minus = 2.0 * input.waist * (-gamma_m1.ln_1p()).sqrt();

    Ok(EstimateReport {
        delta_minus,
        gamma_inferred,
        sensitivity: sensitivity(delta_minus, input.alpha, input.theta, input.waist)?,
        min_detectable: min_detectable_shift(
            input.noise_floor,
            input.alpha,
            input.theta,
            input.waist,
        )
        .ok(),
    })
}

/// Displacement whose loss exceeds the zero-displacement loss by `noise_floor`.
pub fn min_detectable_shift(noise_floor: f64, alpha: f64, theta: f64, waist: f64) -> Result<f64> {
    check_waist(waist)?;
    if !(noise_floor.is_finite() && noise_floor > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "noise floor must be positive, got {noise_floor}"
        )));
    }
    let s = invertible_contrast(alpha, theta)?;
    let r = 2.0 * noise_floor / s;
    if r >= 1.0 {
        return Err(Error::OutOfRange(format!(
            "noise floor {noise_floor} is at or above the largest displacement-induced \
             loss {} for this analyzer setting",
            s / 2.0
        )));
    }
    Ok(2.0 * waist * (-(-r).ln_1p()).sqrt())
}

/// `d(ΔP/P)/dΔ₋ = −s γ Δ₋/(4w₀²)`.
pub fn sensitivity(delta_minus: f64, alpha: f64, theta: f64, waist: f64) -> Result<f64> {
    check_waist(waist)?;
    let r = delta_minus / waist;
    let gamma = (-0.25 * r * r).exp();
    Ok(-interference_contrast(alpha, theta) * gamma * delta_minus / (4.0 * waist * waist))
}
