//! States, couplings and pointers.
//!
//! All values are immutable. Lengths are meters and angles radians; unit
//! conversion belongs to whatever reads user input.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::{Error, Result};

/// Allowed deviation of `|a_H|² + |a_V|²` from one.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Reduces an angle to `(−π, π]`.
pub fn reduce_angle(angle: f64) -> f64 {
    if angle > -PI && angle <= PI {
        return angle;
    }
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// A pure polarization state over the `{H, V}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationState {
    h: Complex64,
    v: Complex64,
}

impl PolarizationState {
    pub fn new(h: Complex64, v: Complex64) -> Result<Self> {
        let norm = h.norm_sqr() + v.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "polarization state must have unit norm, got |a_H|²+|a_V|² = {norm}"
            )));
        }
        Ok(Self { h, v })
    }

    pub const fn horizontal() -> Self {
        Self {
            h: Complex64::new(1.0, 0.0),
            v: Complex64::new(0.0, 0.0),
        }
    }

    pub const fn vertical() -> Self {
        Self {
            h: Complex64::new(0.0, 0.0),
            v: Complex64::new(1.0, 0.0),
        }
    }

    pub fn h(&self) -> Complex64 {
        self.h
    }

    pub fn v(&self) -> Complex64 {
        self.v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PolarizationState) -> Complex64 {
        self.h.conj() * other.h + self.v.conj() * other.v
    }

    pub fn is_balanced(&self) -> bool {
        let b = make_balanced_pre();
        (self.h - b.h).norm() <= NORM_TOLERANCE && (self.v - b.v).norm() <= NORM_TOLERANCE
    }
}

/// The diagonal input state `(|H⟩ + |V⟩)/√2`.
pub fn make_balanced_pre() -> PolarizationState {
    PolarizationState {
        h: Complex64::new(FRAC_1_SQRT_2, 0.0),
        v: Complex64::new(FRAC_1_SQRT_2, 0.0),
    }
}

/// The analyzer state `cos α |H⟩ + e^{iξ} sin α |V⟩`.
pub fn make_post(alpha: f64, xi: f64) -> PolarizationState {
    PostSelectionAngles::new(alpha, xi).state()
}

/// `⟨post|pre⟩`, the amplitude that survives post-selection.
pub fn overlap(pre: &PolarizationState, post: &PolarizationState) -> Complex64 {
    post.inner(pre)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostSelectionAngles {
    pub alpha: f64,
    pub xi: f64,
}

impl PostSelectionAngles {
    pub const fn new(alpha: f64, xi: f64) -> Self {
        Self { alpha, xi }
    }

    pub fn from_degrees(alpha_deg: f64, xi_deg: f64) -> Self {
        Self::new(alpha_deg.to_radians(), xi_deg.to_radians())
    }

    pub fn state(&self) -> PolarizationState {
        let (s, c) = self.alpha.sin_cos();
        PolarizationState {
            h: Complex64::new(c, 0.0),
            v: Complex64::from_polar(s, self.xi),
        }
    }
}

/// Polarization-dependent displacements of the pointer and the relative phase
/// picked up by the `V` component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub delta1: f64,
    pub delta2: f64,
    pub phi: f64,
}

impl CouplingParams {
    pub const fn new(delta1: f64, delta2: f64, phi: f64) -> Self {
        Self {
            delta1,
            delta2,
            phi,
        }
    }

    /// `Δ₁ = Δ`, `Δ₂ = −Δ`.
    pub const fn symmetric(delta: f64, phi: f64) -> Self {
        Self::new(delta, -delta, phi)
    }

    pub fn delta_plus(&self) -> f64 {
        self.delta1 + self.delta2
    }

    pub fn delta_minus(&self) -> f64 {
        self.delta1 - self.delta2
    }
}

/// One-dimensional Gaussian pointer with unit power,
/// `Φ(x) = (π w₀²)^{-1/4} exp(−(x − x₀)²/(2 w₀²))`.
///
/// With this width convention the overlap of two copies displaced by `Δ₁` and
/// `Δ₂` is `exp(−(Δ₁ − Δ₂)²/(4 w₀²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPointer {
    waist: f64,
    center: f64,
}

impl GaussianPointer {
    pub fn new(waist: f64) -> Result<Self> {
        Self::with_center(waist, 0.0)
    }

    pub fn with_center(waist: f64, center: f64) -> Result<Self> {
        if !(waist.is_finite() && waist > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "beam waist must be finite and positive, got {waist}"
            )));
        }
        if !center.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "pointer center must be finite, got {center}"
            )));
        }
        Ok(Self { waist, center })
    }

    pub fn waist(&self) -> f64 {
        self.waist
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Peak amplitude `Φ(x₀)`.
    pub fn peak(&self) -> f64 {
        (PI * self.waist * self.waist).powf(-0.25)
    }

    /// `Φ(x)`.
    pub fn amplitude(&self, x: f64) -> f64 {
        self.amplitude_at_offset(x - self.center)
    }

    /// `Φ(x₀ + u)`.
    pub fn amplitude_at_offset(&self, u: f64) -> f64 {
        let r = u / self.waist;
        self.peak() * (-0.5 * r * r).exp()
    }
}

/// Pre-selection, coupling, pointer and post-selection of one experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetup {
    pub pre: PolarizationState,
    pub post: PostSelectionAngles,
    pub coupling: CouplingParams,
    pub pointer: GaussianPointer,
}

impl MeasurementSetup {
    pub fn new(
        pre: PolarizationState,
        post: PostSelectionAngles,
        coupling: CouplingParams,
        pointer: GaussianPointer,
    ) -> Self {
        Self {
            pre,
            post,
            coupling,
            pointer,
        }
    }

    pub fn balanced(
        post: PostSelectionAngles,
        coupling: CouplingParams,
        pointer: GaussianPointer,
    ) -> Self {
        Self::new(make_balanced_pre(), post, coupling, pointer)
    }

    /// `θ = φ − ξ`, reduced to `(−π, π]`.
    pub fn theta(&self) -> f64 {
        reduce_angle(self.coupling.phi - self.post.xi)
    }

    pub fn balanced_pre(&self) -> bool {
        self.pre.is_balanced()
    }

    pub fn post_state(&self) -> PolarizationState {
        self.post.state()
    }

    pub fn overlap(&self) -> Complex64 {
        overlap(&self.pre, &self.post_state())
    }
}

/// Closed-form observables of a balanced setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementResult {
    pub mean_position: f64,
    pub power_ratio: f64,
    pub fractional_loss: f64,
    pub amplification: f64,
    pub gamma: f64,
    pub overlap: Complex64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn balanced_pre_is_unit_diagonal() {
        let b = make_balanced_pre();
        assert_eq!(b.h(), Complex64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(b.v(), Complex64::new(FRAC_1_SQRT_2, 0.0));
        assert_abs_diff_eq!(b.norm_sqr(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(overlap(&b, &b).re, 1.0, epsilon = 1e-15);
        assert!(b.is_balanced());
    }

    #[test]
    fn post_selection_examples() {
        let h = make_post(0.0, 0.0);
        assert_eq!(
            (h.h(), h.v()),
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        );

        let v = make_post(FRAC_PI_2, 0.0);
        assert_abs_diff_eq!(v.h().re, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(v.v().re, 1.0, epsilon = 1e-16);

        let c = make_post(PI / 4.0, FRAC_PI_2);
        assert_abs_diff_eq!(c.h().re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(c.v().re, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(c.v().im, FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn overlap_examples() {
        let pre = make_balanced_pre();
        let ortho = overlap(&pre, &make_post((-45f64).to_radians(), 0.0));
        assert_abs_diff_eq!(ortho.norm(), 0.0, epsilon = 2.0 * f64::EPSILON);

        let same = overlap(&pre, &make_post(45f64.to_radians(), 0.0));
        assert_abs_diff_eq!(same.re, 1.0, epsilon = 1e-15);

        // (cos α + sin α)/√2 at α = −44.9° is sin(0.1°) = 1.745328365898309e-3.
        let near = overlap(&pre, &make_post((-44.9f64).to_radians(), 0.0));
        let by_components = {
            let a = (-44.9f64).to_radians();
            (a.cos() * FRAC_1_SQRT_2) + (a.sin() * FRAC_1_SQRT_2)
        };
        assert_abs_diff_eq!(near.re, by_components, epsilon = 1e-18);
        assert_abs_diff_eq!(near.re, 1.745328365898309e-3, epsilon = 1e-15);
        assert_eq!(near.im, 0.0);
    }

    #[test]
    fn rejects_non_unit_state() {
        let err = PolarizationState::new(Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0));
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
        assert!(PolarizationState::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).is_ok());
    }

    #[test]
    fn pointer_validation() {
        assert!(GaussianPointer::new(0.0).is_err());
        assert!(GaussianPointer::new(-1e-6).is_err());
        assert!(GaussianPointer::new(f64::NAN).is_err());
        assert!(GaussianPointer::with_center(1e-6, f64::INFINITY).is_err());
        let p = GaussianPointer::with_center(2e-6, 5e-6).unwrap();
        assert_eq!(p.amplitude(5e-6), p.peak());
    }

    #[test]
    fn theta_is_phi_minus_xi_reduced() {
        let pointer = GaussianPointer::new(1e-5).unwrap();
        let s = MeasurementSetup::balanced(
            PostSelectionAngles::new(0.3, -3.0),
            CouplingParams::new(0.0, 0.0, 1.0),
            pointer,
        );
        assert_abs_diff_eq!(s.theta(), 4.0 - 2.0 * PI, epsilon = 1e-15);
        assert_eq!(reduce_angle(PI), PI);
        assert_eq!(reduce_angle(-PI), PI);
        assert_eq!(reduce_angle(0.0), 0.0);
    }

    #[test]
    fn balanced_flag() {
        let pointer = GaussianPointer::new(1e-5).unwrap();
        let post = PostSelectionAngles::new(0.0, 0.0);
        let c = CouplingParams::new(0.0, 0.0, 0.0);
        assert!(MeasurementSetup::balanced(post, c, pointer).balanced_pre());
        let h = MeasurementSetup::new(PolarizationState::horizontal(), post, c, pointer);
        assert!(!h.balanced_pre());
    }

    #[test]
    fn derived_deltas() {
        let c = CouplingParams::new(3.0, -1.0, 0.0);
        assert_eq!(c.delta_plus(), 2.0);
        assert_eq!(c.delta_minus(), 4.0);
    }

    #[test]
    fn post_norm_over_many_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1_000_000 {
            let a: f64 = rng.random_range(-PI..PI);
            let x: f64 = rng.random_range(-PI..PI);
            assert!((make_post(a, x).norm_sqr() - 1.0).abs() < 4.0 * f64::EPSILON);
        }
    }

    proptest! {
        #[test]
        fn overlap_with_balanced_expands(alpha in -PI..PI, xi in -PI..PI) {
            let o = overlap(&make_balanced_pre(), &make_post(alpha, xi));
            let expected = (1.0 + (2.0 * alpha).sin() * xi.cos()) / 2.0;
            prop_assert!((o.norm_sqr() - expected).abs() < 1e-12);
        }

        #[test]
        fn self_overlap_is_one(alpha in -PI..PI, xi in -PI..PI) {
            let s = make_post(alpha, xi);
            let o = overlap(&s, &s);
            prop_assert!((o.re - 1.0).abs() < 1e-12 && o.im.abs() < 1e-12);
        }

        #[test]
        fn reduced_angle_in_half_open_interval(a in -1e3f64..1e3) {
            let r = reduce_angle(a);
            prop_assert!(r > -PI && r <= PI);
            let turns = (r - a) / (2.0 * PI);
            prop_assert!((turns - turns.round()).abs() < 1e-9);
        }
    }
}
