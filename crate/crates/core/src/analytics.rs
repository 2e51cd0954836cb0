//! Closed-form observables for the balanced pre-selection.
//!
//! With `s = sin 2α cos θ` and pointer overlap `γ = exp(−Δ₋²/(4w₀²))` the
//! post-selected power is `½(1 + γ s)` and the mean position is
//! `Δ₊/2 + (Δ₋/2)·cos 2α/(1 + γ s)`. Quantities that sit close to 1 or 0 are
//! built from `expm1` so small fractional losses keep full relative precision.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::model::{overlap, MeasurementResult, MeasurementSetup, PolarizationState};
use crate::model::{CouplingParams, GaussianPointer};
use crate::{parallel, Error, Result, DARK_PORT_THRESHOLD};

/// `|⟨post|pre⟩|` at or below which the pair is treated as orthogonal.
pub const ORTHOGONALITY_TOLERANCE: f64 = 4.0 * f64::EPSILON;

/// Two-level observable diagonal in `{H, V}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakObservable {
    pub eigen_h: f64,
    pub eigen_v: f64,
}

impl Default for WeakObservable {
    /// `σ_z`-like: `+1` on `H`, `−1` on `V`. With `Δ₁ = −Δ₂ = Δ` this makes
    /// `⟨x⟩/Δ` equal to the real part of the weak value.
    fn default() -> Self {
        Self {
            eigen_h: 1.0,
            eigen_v: -1.0,
        }
    }
}

/// `⟨post|A|pre⟩ / ⟨post|pre⟩`.
pub fn weak_value(
    pre: &PolarizationState,
    post: &PolarizationState,
    obs: WeakObservable,
) -> Result<Complex64> {
    let denom = overlap(pre, post);
    if denom.norm() <= ORTHOGONALITY_TOLERANCE {
        return Err(Error::OrthogonalPostSelection);
    }
    let num = post.h().conj() * obs.eigen_h * pre.h() + post.v().conj() * obs.eigen_v * pre.v();
    Ok(num / denom)
}

fn require_balanced(setup: &MeasurementSetup) -> Result<()> {
    if setup.balanced_pre() {
        Ok(())
    } else {
        Err(Error::UnsupportedPreSelection)
    }
}

/// Output intensity `|cos α Φ(x−Δ₁) + sin α Φ(x−Δ₂) e^{iθ}|²`.
///
/// This is the unnormalized profile: it integrates to `1 + γ sin 2α cos θ`,
/// twice the power ratio, because the `1/√2` of the input amplitudes is left out.
pub fn intensity_at(setup: &MeasurementSetup, x: f64) -> Result<f64> {
    require_balanced(setup)?;
    let (s, c) = setup.post.alpha.sin_cos();
    let p = &setup.pointer;
    let field = Complex64::new(c * p.amplitude(x - setup.coupling.delta1), 0.0)
        + Complex64::from_polar(s * p.amplitude(x - setup.coupling.delta2), setup.theta());
    Ok(field.norm_sqr())
}

/// `Δ₋²/(4w₀²)`, the exponent of [`gamma`].
fn separation_exponent(coupling: &CouplingParams, pointer: &GaussianPointer) -> f64 {
    let r = coupling.delta_minus() / pointer.waist();
    0.25 * r * r
}

/// Overlap of the two displaced pointers, `exp(−(Δ₁−Δ₂)²/(4w₀²))`.
pub fn gamma(coupling: &CouplingParams, pointer: &GaussianPointer) -> f64 {
    (-separation_exponent(coupling, pointer)).exp()
}

/// `s = sin 2α cos θ` with `1 + s` and `s − 1` evaluated without cancellation.
///
/// Where `1 ± sin 2α` cancels it is taken as `2 sin²(α ± π/4)`, and
/// `1 − cos θ` as `2 sin²(θ/2)`, so deep-extinction settings keep full
/// relative precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contrast {
    pub s: f64,
    pub one_plus_s: f64,
    pub s_minus_one: f64,
}

impl Contrast {
    pub fn new(alpha: f64, theta: f64) -> Self {
        let sin2a = (2.0 * alpha).sin();
        let half = (0.5 * theta).sin();
        let dephasing = 2.0 * sin2a * half * half;
        let one_plus_sin = if sin2a < 0.0 {
            2.0 * (alpha + FRAC_PI_4).sin().powi(2)
        } else {
            1.0 + sin2a
        };
        let one_minus_sin = if sin2a > 0.0 {
            2.0 * (alpha - FRAC_PI_4).sin().powi(2)
        } else {
            1.0 - sin2a
        };
        Self {
            s: sin2a * theta.cos(),
            one_plus_s: one_plus_sin - dephasing,
            s_minus_one: -one_minus_sin - dephasing,
        }
    }
}

/// Pieces shared by the power-type observables.
struct Interference {
    contrast: Contrast,
    /// `γ − 1`
    gamma_m1: f64,
}

impl Interference {
    fn of(setup: &MeasurementSetup) -> Self {
        let contrast = Contrast::new(setup.post.alpha, setup.theta());
        let gamma_m1 = (-separation_exponent(&setup.coupling, &setup.pointer)).exp_m1();
        Self { contrast, gamma_m1 }
    }

    /// `1 + γ s`
    fn denominator(&self) -> f64 {
        self.contrast.one_plus_s + self.contrast.s * self.gamma_m1
    }

    /// `γ s − 1`
    fn excess(&self) -> f64 {
        // adding +0 turns a lossless −0 into 0
        self.contrast.s_minus_one + self.contrast.s * self.gamma_m1 + 0.0
    }
}

fn bright_denominator(setup: &MeasurementSetup) -> Result<f64> {
    require_balanced(setup)?;
    let d = Interference::of(setup).denominator();
    if d / 2.0 <= DARK_PORT_THRESHOLD {
        return Err(Error::DarkPort { power: d / 2.0 });
    }
    Ok(d)
}

/// Mean pointer position after post-selection, measured in the same frame as
/// the pointer center.
pub fn mean_position(setup: &MeasurementSetup) -> Result<f64> {
    let a = amplification(setup)?;
    let c = &setup.coupling;
    Ok(setup.pointer.center() + (0.5 * c.delta_plus() + 0.5 * c.delta_minus() * a))
}

/// Factor multiplying `Δ₋/2` in the mean position.
pub fn amplification(setup: &MeasurementSetup) -> Result<f64> {
    let d = bright_denominator(setup)?;
    Ok((2.0 * setup.post.alpha).cos() / d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalAngle {
    pub alpha0: f64,
    /// `+∞` when `γ cos θ = ±1`.
    pub a_max: f64,
    /// Set when `a_max` is the infinite ideal-limit sentinel.
    pub unbounded: bool,
}

/// Analyzer angle of maximum amplification, `α₀ = −½ asin(γ cos θ)`, and the
/// peak value `(1 − γ² cos² θ)^{−1/2}`.
pub fn optimal_angle(gamma: f64, theta: f64) -> Result<OptimalAngle> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    let g = gamma * theta.cos();
    let alpha0 = -0.5 * g.asin();
    // 1 − |γ cos θ| = (1 − γ) + γ(1 − |cos θ|), without cancellation
    let half = 0.5 * theta;
    let one_minus_cos_abs = if theta.cos() >= 0.0 {
        2.0 * half.sin().powi(2)
    } else {
        2.0 * half.cos().powi(2)
    };
    let one_minus_g = (1.0 - gamma) + gamma * one_minus_cos_abs;
    let one_minus_g2 = one_minus_g * (1.0 + g.abs());
    if one_minus_g2 <= 0.0 {
        return Ok(OptimalAngle {
            alpha0,
            a_max: f64::INFINITY,
            unbounded: true,
        });
    }
    Ok(OptimalAngle {
        alpha0,
        a_max: one_minus_g2.sqrt().recip(),
        unbounded: false,
    })
}

/// `P_out/P_in = ½(1 + γ sin 2α cos θ)`.
pub fn power_ratio(setup: &MeasurementSetup) -> Result<f64> {
    require_balanced(setup)?;
    Ok(0.5 * Interference::of(setup).denominator())
}

/// `ΔP/P_in = ½(γ cos θ sin 2α − 1)`.
pub fn fractional_loss(setup: &MeasurementSetup) -> Result<f64> {
    require_balanced(setup)?;
    Ok(0.5 * Interference::of(setup).excess())
}

/// `10 log₁₀(P_out/P_in)`.
pub fn loss_db(power_ratio: f64) -> Result<f64> {
    if power_ratio == 0.0 {
        return Err(Error::ZeroPower);
    }
    if power_ratio.is_nan() || power_ratio < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "power ratio must be positive, got {power_ratio}"
        )));
    }
    Ok(10.0 * power_ratio.log10())
}

/// All closed-form observables of a bright-port setup.
pub fn evaluate(setup: &MeasurementSetup) -> Result<MeasurementResult> {
    Ok(MeasurementResult {
        mean_position: mean_position(setup)?,
        power_ratio: power_ratio(setup)?,
        fractional_loss: fractional_loss(setup)?,
        amplification: amplification(setup)?,
        gamma: gamma(&setup.coupling, &setup.pointer),
        overlap: setup.overlap(),
    })
}

pub fn evaluate_batch(
    strategy: parallel::Strategy,
    setups: &[MeasurementSetup],
) -> Vec<Result<MeasurementResult>> {
    parallel::map_with(strategy, setups, evaluate)
}
