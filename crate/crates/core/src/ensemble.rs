//! Seeded random scenario generators.
//!
//! ChaCha8 keeps the streams identical across platforms and releases of
//! `rand`, so a seed pins an ensemble exactly.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{CouplingParams, GaussianPointer, MeasurementSetup, PostSelectionAngles};
use crate::oam::{SpectralPointer, TwoModeScenario};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform beam waist in `[1 µm, 1 mm]`.
pub fn random_waist<R: Rng>(rng: &mut R) -> f64 {
    10f64.powf(rng.random_range(-6.0..=-3.0))
}

/// Balanced setups with uniform `α, ξ, φ`, waist in `[1 µm, 1 mm]` and
/// displacements within a tenth of a waist.
pub fn random_balanced_setups(seed: u64, n: usize) -> Vec<MeasurementSetup> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let alpha = rng.random_range(-PI..PI);
            let xi = rng.random_range(-PI..PI);
            let phi = rng.random_range(-PI..PI);
            let w = random_waist(&mut rng);
            let d1 = rng.random_range(-0.1..=0.1) * w;
            let d2 = rng.random_range(-0.1..=0.1) * w;
            MeasurementSetup::balanced(
                PostSelectionAngles::new(alpha, xi),
                CouplingParams::new(d1, d2, phi),
                GaussianPointer::new(w).expect("waist is positive"),
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationCase {
    pub delta_minus: f64,
    pub alpha: f64,
    pub theta: f64,
    pub waist: f64,
}

/// `Δ₋ ∈ [0, w₀/4]`, `α ∈ (10°, 80°)`, `θ ∈ (−45°, 45°)`.
pub fn random_estimation_cases(seed: u64, n: usize) -> Vec<EstimationCase> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let waist = random_waist(&mut rng);
            EstimationCase {
                delta_minus: rng.random_range(0.0..=0.25) * waist,
                alpha: rng.random_range(10f64.to_radians()..80f64.to_radians()),
                theta: rng.random_range((-45f64).to_radians()..45f64.to_radians()),
                waist,
            }
        })
        .collect()
}

/// Uniform analyzer angle and phase, `(α, θ)` in `[−π, π)²`.
pub fn random_angle_pairs(seed: u64, n: usize) -> Vec<(f64, f64)> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| (rng.random_range(-PI..PI), rng.random_range(-PI..PI)))
        .collect()
}

/// Two-mode OAM scenarios: uniform `α, ξ, φ`, spectral width `σ/2π`
/// log-uniform in `[100 Hz, 100 kHz]` and rotation `|Ω| < σ/20`, so the mode
/// shifts stay within a tenth of the width as the position ensembles do.
pub fn random_two_mode_scenarios(seed: u64, n: usize) -> Vec<TwoModeScenario> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let sigma = 2.0 * PI * 10f64.powf(rng.random_range(2.0..5.0));
            TwoModeScenario {
                alpha: rng.random_range(-PI..PI),
                xi: rng.random_range(-PI..PI),
                phi: rng.random_range(-PI..PI),
                omega_rot: rng.random_range(-0.05..0.05) * sigma,
                spectrum: SpectralPointer {
                    center: 2.0 * PI * 3e14,
                    width: sigma,
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        assert_eq!(
            random_balanced_setups(42, 50),
            random_balanced_setups(42, 50)
        );
        assert_ne!(random_balanced_setups(42, 5), random_balanced_setups(43, 5));
        assert_eq!(
            random_estimation_cases(1, 10),
            random_estimation_cases(1, 10)
        );
    }

    #[test]
    fn ranges_respected() {
        for s in random_balanced_setups(3, 2000) {
            let w = s.pointer.waist();
            assert!((1e-6..=1e-3 * (1.0 + 1e-12)).contains(&w));
            assert!(s.coupling.delta1.abs() <= 0.1 * w && s.coupling.delta2.abs() <= 0.1 * w);
            assert!(s.balanced_pre());
        }
        for c in random_estimation_cases(3, 2000) {
            assert!(c.delta_minus >= 0.0 && c.delta_minus <= 0.25 * c.waist);
            assert!(c.alpha > 0.17 && c.alpha < 1.4);
        }
    }
}
