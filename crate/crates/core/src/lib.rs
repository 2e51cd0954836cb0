//! Weak-measurement interference with a polarization-coupled Gaussian pointer.
//!
//! A linearly polarized Gaussian beam crosses a medium that displaces its
//! `H` and `V` components by `Δ₁` and `Δ₂` and adds a relative phase `φ`.
//! The beam is then projected onto `cos α |H⟩ + e^{iξ} sin α |V⟩` and
//! detected. This crate evaluates the resulting observables in closed form
//! ([`analytics`]), checks them against brute-force integration of the
//! output field ([`quadrature`]), and inverts a measured fractional power loss
//! back into the displacement `Δ₋ = Δ₁ − Δ₂` ([`estimation`]).
//! [`oam`] covers the N-mode generalization, in which orbital angular
//! momentum modes are frequency shifted by a rotating element.
//!
//! Lengths are in meters, angles in radians and angular frequencies in rad/s.
//!
//! ```
//! use weakint::{analytics, CouplingParams, GaussianPointer, MeasurementSetup, PostSelectionAngles};
//!
//! let setup = MeasurementSetup::balanced(
//!     PostSelectionAngles::from_degrees(45.0, 0.0),
//!     CouplingParams::symmetric(10e-9, 0.0),
//!     GaussianPointer::new(10e-6).unwrap(),
//! );
//! let loss = analytics::fractional_loss(&setup).unwrap();
//! assert!((loss - (-1e-6f64).exp_m1() / 2.0).abs() < 1e-20);
//! ```

pub mod analytics;
pub mod ensemble;
mod error;
pub mod estimation;
pub mod model;
pub mod oam;
pub mod parallel;
pub mod quadrature;

pub use error::{Error, Result};
pub use model::{
    CouplingParams, GaussianPointer, MeasurementResult, MeasurementSetup, PolarizationState,
    PostSelectionAngles,
};
pub use num_complex::Complex64;

/// Post-selected power ratio at or below which the output port is treated as dark.
pub const DARK_PORT_THRESHOLD: f64 = 1e-15;
