//! N-mode generalization with orbital angular momentum modes.
//!
//! A beam carrying OAM modes `m` through an element rotating at `Ω` leaves
//! mode `m` with spectrum `Φ(ω + 2mΩ)`, i.e. shifted by `−2mΩ` with the sign
//! convention used throughout this module. Post-selecting on a vector in mode
//! space makes the shifted spectra interfere exactly as the two displaced
//! pointers do in the polarization case.
//!
//! With modes `m = +1 ↔ H` and `m = −1 ↔ V` the two-mode case maps onto
//! [`MeasurementSetup`] via `x ↔ ω − ω₀`, `Δ₁ ↔ −2Ω`, `Δ₂ ↔ +2Ω`, `w₀ ↔ σ_ω`
//! (see [`TwoModeScenario`]).

use std::collections::HashSet;

use num_complex::Complex64;

use crate::model::{CouplingParams, GaussianPointer, MeasurementSetup, PostSelectionAngles};
use crate::quadrature::{simpson_moments, QuadratureGrid};
use crate::{Error, Result, DARK_PORT_THRESHOLD};

const AMPLITUDE_NORM_TOLERANCE: f64 = 1e-12;

/// Frequency shift magnitude `2mΩ` imparted to mode `m`.
pub fn mode_shift(m: i32, omega_rot: f64) -> f64 {
    2.0 * f64::from(m) * omega_rot
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OamMode {
    pub m: i32,
    pub amp_in: Complex64,
    pub amp_post: Complex64,
    pub extra_phase: f64,
}

impl OamMode {
    pub fn new(m: i32, amp_in: Complex64, amp_post: Complex64) -> Self {
        Self {
            m,
            amp_in,
            amp_post,
            extra_phase: 0.0,
        }
    }

    pub fn with_phase(mut self, extra_phase: f64) -> Self {
        self.extra_phase = extra_phase;
        self
    }

    fn weight(&self) -> Complex64 {
        self.amp_post.conj() * self.amp_in * Complex64::from_polar(1.0, self.extra_phase)
    }
}

/// Gaussian spectrum `(πσ²)^{-1/4} exp(−(ω−ω₀)²/(2σ²))` of unit power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPointer {
    pub center: f64,
    pub width: f64,
}

impl SpectralPointer {
    fn as_pointer(&self) -> Result<GaussianPointer> {
        GaussianPointer::with_center(self.width, self.center)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OamSetup {
    modes: Vec<OamMode>,
    omega_rot: f64,
    spectrum: SpectralPointer,
    pointer: GaussianPointer,
}

impl OamSetup {
    pub fn new(modes: Vec<OamMode>, omega_rot: f64, spectrum: SpectralPointer) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one mode is required".into(),
            ));
        }
        let mut seen = HashSet::new();
        for mode in &modes {
            if !seen.insert(mode.m) {
                return Err(Error::InvalidParameter(format!(
                    "mode index {} appears more than once",
                    mode.m
                )));
            }
        }
        for (name, norm) in [
            (
                "input",
                modes.iter().map(|m| m.amp_in.norm_sqr()).sum::<f64>(),
            ),
            (
                "post-selection",
                modes.iter().map(|m| m.amp_post.norm_sqr()).sum::<f64>(),
            ),
        ] {
            if norm.is_nan() || (norm - 1.0).abs() > AMPLITUDE_NORM_TOLERANCE {
                return Err(Error::InvalidParameter(format!(
                    "{name} amplitudes must have unit norm, got {norm}"
                )));
            }
        }
        if !omega_rot.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rotation rate must be finite, got {omega_rot}"
            )));
        }
        let pointer = spectrum.as_pointer()?;
        Ok(Self {
            modes,
            omega_rot,
            spectrum,
            pointer,
        })
    }

    /// Equal input and post-selection weights `1/√N` on every listed mode.
    pub fn balanced(
        mode_indices: &[i32],
        omega_rot: f64,
        spectrum: SpectralPointer,
    ) -> Result<Self> {
        let a = Complex64::new((mode_indices.len() as f64).sqrt().recip(), 0.0);
        let modes = mode_indices
            .iter()
            .map(|&m| OamMode::new(m, a, a))
            .collect();
        Self::new(modes, omega_rot, spectrum)
    }

    pub fn modes(&self) -> &[OamMode] {
        &self.modes
    }

    pub fn omega_rot(&self) -> f64 {
        self.omega_rot
    }

    pub fn spectrum(&self) -> SpectralPointer {
        self.spectrum
    }

    /// Spectral centers of the modes relative to `ω₀`.
    fn centers(&self) -> impl Iterator<Item = (f64, &OamMode)> + '_ {
        self.modes
            .iter()
            .map(move |mode| (-mode_shift(mode.m, self.omega_rot), mode))
    }

    fn amplitude_rel(&self, nu: f64) -> Complex64 {
        self.modes
            .iter()
            .map(|mode| {
                mode.weight()
                    * self
                        .pointer
                        .amplitude_at_offset(nu + mode_shift(mode.m, self.omega_rot))
            })
            .sum()
    }
}

/// Post-selected spectral density at absolute angular frequency `omega`.
pub fn output_spectrum(setup: &OamSetup, omega: f64) -> f64 {
    setup
        .amplitude_rel(omega - setup.spectrum.center)
        .norm_sqr()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMoments {
    /// Post-selected power relative to the input power.
    pub power: f64,
    /// Mean angular frequency relative to `ω₀`.
    pub mean_shift: f64,
}

/// Integrates the post-selected spectrum on a grid centered between the
/// extreme mode shifts and reaching `H` widths beyond every shifted spectrum
/// and the unshifted input.
pub fn spectral_moments(setup: &OamSetup, grid: &QuadratureGrid) -> Result<SpectralMoments> {
    let (lo, hi) = setup
        .centers()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (c, _)| {
            (lo.min(c), hi.max(c))
        });
    let mid = 0.5 * (lo + hi);
    // wide enough for the unshifted input spectrum as well
    let reach = (0.5 * (hi - lo)).max(mid.abs());
    let half_width = grid.half_extent_in_waists() * setup.spectrum.width + reach;
    // offset of each mode's spectral center from the grid center
    let terms: Vec<(Complex64, f64)> = setup
        .centers()
        .map(|(c, mode)| (mode.weight(), mid - c))
        .collect();
    let p = &setup.pointer;

    let out = simpson_moments(
        |u| {
            terms
                .iter()
                .map(|(w, o)| w * p.amplitude_at_offset(u + o))
                .sum::<Complex64>()
                .norm_sqr()
        },
        half_width,
        grid.samples(),
    );
    let input_norm: f64 = setup.modes.iter().map(|m| m.amp_in.norm_sqr()).sum();
    let input = simpson_moments(
        |u| input_norm * p.amplitude_at_offset(u + mid).powi(2),
        half_width,
        grid.samples(),
    );
    let power = out.mass / input.mass;
    if power <= DARK_PORT_THRESHOLD {
        return Err(Error::DarkPort { power });
    }
    Ok(SpectralMoments {
        power,
        mean_shift: mid + out.first / out.mass,
    })
}

/// Mean frequency of the post-selected light relative to `ω₀`.
pub fn mean_frequency(setup: &OamSetup, grid: &QuadratureGrid) -> Result<f64> {
    spectral_moments(setup, grid).map(|m| m.mean_shift)
}

/// `n` samples of the post-selected spectrum over `±half_extent` widths
/// around the spectral center of mass of the modes, as `(ω − ω₀, S)`.
pub fn spectrum_samples(setup: &OamSetup, half_extent: f64, n: usize) -> Vec<(f64, f64)> {
    let (lo, hi) = setup
        .centers()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (c, _)| {
            (lo.min(c), hi.max(c))
        });
    let span = half_extent * setup.spectrum.width + 0.5 * (hi - lo);
    let mid = 0.5 * (lo + hi);
    crate::parallel::linspace(mid - span, mid + span, n)
        .into_iter()
        .map(|nu| (nu, setup.amplitude_rel(nu).norm_sqr()))
        .collect()
}

/// Two-mode OAM experiment and its polarization counterpart.
///
/// Mode `+1` plays `H`, mode `−1` plays `V`; both carry input amplitude
/// `1/√2`, the post-selection is `(cos α, e^{iξ} sin α)` and mode `−1` picks
/// up the extra phase `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeScenario {
    pub alpha: f64,
    pub xi: f64,
    pub phi: f64,
    pub omega_rot: f64,
    pub spectrum: SpectralPointer,
}

impl TwoModeScenario {
    pub fn oam_setup(&self) -> Result<OamSetup> {
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let post = PostSelectionAngles::new(self.alpha, self.xi).state();
        OamSetup::new(
            vec![
                OamMode::new(1, a, post.h()),
                OamMode::new(-1, a, post.v()).with_phase(self.phi),
            ],
            self.omega_rot,
            self.spectrum,
        )
    }

    /// Same experiment in position language: `Δ₁ = −2Ω`, `Δ₂ = +2Ω`,
    /// `w₀ = σ_ω`, measured relative to `ω₀`.
    pub fn measurement_setup(&self) -> Result<MeasurementSetup> {
        Ok(MeasurementSetup::balanced(
            PostSelectionAngles::new(self.alpha, self.xi),
            CouplingParams::new(
                -mode_shift(1, self.omega_rot),
                -mode_shift(-1, self.omega_rot),
                self.phi,
            ),
            GaussianPointer::new(self.spectrum.width)?,
        ))
    }
}
