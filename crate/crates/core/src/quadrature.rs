//! Brute-force integration of the post-selected field.
//!
//! Nothing here uses the closed forms of [`crate::analytics`]; the output field
//! is built from the pre- and post-selected amplitudes and integrated with
//! composite Simpson on a uniform grid. Works for any unit-norm pre-selection.

use num_complex::Complex64;

use crate::model::{CouplingParams, GaussianPointer, MeasurementSetup, PolarizationState};
use crate::{analytics, parallel, Error, Result, DARK_PORT_THRESHOLD};

/// Relative discrepancy above which a comparison is reported as failing.
pub const FAIL_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    half_extent_in_waists: f64,
    samples: usize,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self {
            half_extent_in_waists: 8.0,
            samples: 4001,
        }
    }
}

impl QuadratureGrid {
    pub fn new(half_extent_in_waists: f64, samples: usize) -> Result<Self> {
        if samples < 3 || samples.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "Simpson grid needs an odd sample count ≥ 3, got {samples}"
            )));
        }
        if !(half_extent_in_waists.is_finite() && half_extent_in_waists >= 4.0) {
            return Err(Error::InvalidParameter(format!(
                "grid half-extent must be at least 4 waists, got {half_extent_in_waists}"
            )));
        }
        Ok(Self {
            half_extent_in_waists,
            samples,
        })
    }

    pub fn half_extent_in_waists(&self) -> f64 {
        self.half_extent_in_waists
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Zeroth and first moments of a sampled integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// `∫ f(u) du`
    pub mass: f64,
    /// `∫ u f(u) du`
    pub first: f64,
}

/// Composite Simpson on `[−half_width, half_width]` with `samples` nodes.
///
/// Nodes are visited in mirrored pairs from the outside in, so an even
/// integrand gives an exactly zero first moment and the summation order is
/// fixed regardless of how the caller schedules work.
pub fn simpson_moments<F: Fn(f64) -> f64>(f: F, half_width: f64, samples: usize) -> Moments {
    debug_assert!(samples >= 3 && samples % 2 == 1);
    let mid = samples / 2;
    let h = half_width / mid as f64;
    let weight = |k: usize| -> f64 {
        if k == 0 || k == samples - 1 {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let mut mass = CompensatedSum::default();
    let mut first = CompensatedSum::default();
    for k in 0..mid {
        let steps = (mid - k) as f64;
        let u = steps * h;
        let w = weight(k);
        let left = w * f(-u);
        let right = w * f(u);
        mass.add(left + right);
        first.add(u * (right - left));
    }
    mass.add(weight(mid) * f(0.0));
    Moments {
        mass: mass.value() * h / 3.0,
        first: first.value() * h / 3.0,
    }
}

/// Simpson integral of `f` over `[center − half_width, center + half_width]`.
pub fn simpson<F: Fn(f64) -> f64>(f: F, center: f64, half_width: f64, samples: usize) -> f64 {
    simpson_moments(|u| f(center + u), half_width, samples).mass
}

/// Amplitude reaching the detector at `x`:
/// `⟨post|H⟩⟨H|pre⟩ Φ(x−Δ₁) + ⟨post|V⟩⟨V|pre⟩ e^{iφ} Φ(x−Δ₂)`.
pub fn output_field_at(
    pre: &PolarizationState,
    post: &PolarizationState,
    coupling: &CouplingParams,
    pointer: &GaussianPointer,
    x: f64,
) -> Complex64 {
    let (kh, kv) = branch_weights(pre, post, coupling);
    kh * pointer.amplitude(x - coupling.delta1) + kv * pointer.amplitude(x - coupling.delta2)
}

fn branch_weights(
    pre: &PolarizationState,
    post: &PolarizationState,
    coupling: &CouplingParams,
) -> (Complex64, Complex64) {
    let kh = post.h().conj() * pre.h();
    let kv = post.v().conj() * pre.v() * Complex64::from_polar(1.0, coupling.phi);
    (kh, kv)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrated {
    /// `P_out/P_in`
    pub p_out: f64,
    pub mean_x: f64,
}

/// Post-selected power and mean position by direct integration.
///
/// The grid is centered on `x₀ + Δ₊/2` and reaches `H·w₀` beyond both
/// displaced pointers and the undisplaced input. `P_in` comes from the same
/// grid, so discretization error cancels in the ratio.
pub fn integrate(
    pre: &PolarizationState,
    post: &PolarizationState,
    coupling: &CouplingParams,
    pointer: &GaussianPointer,
    grid: &QuadratureGrid,
) -> Result<Integrated> {
    let mid_shift = 0.5 * coupling.delta_plus();
    let reach = (0.5 * coupling.delta_minus().abs()).max(mid_shift.abs());
    let half_width = grid.half_extent_in_waists * pointer.waist() + reach;
    // pointer offsets of the two branches relative to the grid center
    let o1 = mid_shift - coupling.delta1;
    let o2 = mid_shift - coupling.delta2;
    let (kh, kv) = branch_weights(pre, post, coupling);

    let out = simpson_moments(
        |u| {
            (kh * pointer.amplitude_at_offset(u + o1) + kv * pointer.amplitude_at_offset(u + o2))
                .norm_sqr()
        },
        half_width,
        grid.samples,
    );
    let input = simpson_moments(
        |u| pre.norm_sqr() * pointer.amplitude_at_offset(u + mid_shift).powi(2),
        half_width,
        grid.samples,
    );
    let p_out = out.mass / input.mass;
    if p_out <= DARK_PORT_THRESHOLD {
        return Err(Error::DarkPort { power: p_out });
    }
    Ok(Integrated {
        p_out,
        mean_x: (pointer.center() + mid_shift) + out.first / out.mass,
    })
}

pub fn integrate_setup(setup: &MeasurementSetup, grid: &QuadratureGrid) -> Result<Integrated> {
    integrate(
        &setup.pre,
        &setup.post_state(),
        &setup.coupling,
        &setup.pointer,
        grid,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStatus {
    Pass,
    Fail,
    /// Both paths agree the output port is dark; no mean comparison is made.
    DarkPort,
}

impl ReportStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ReportStatus::Pass => "PASS",
            ReportStatus::Fail => "FAIL",
            ReportStatus::DarkPort => "DARK_PORT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyReport {
    pub status: ReportStatus,
    pub power_analytic: f64,
    pub power_quadrature: f64,
    pub power_rel_err: f64,
    pub mean_analytic: Option<f64>,
    pub mean_quadrature: Option<f64>,
    /// Relative to `max(|⟨x⟩|, |x₀|, |Δ₁|, |Δ₂|)`, falling back to the waist when all vanish.
    pub mean_rel_err: Option<f64>,
    pub grid: QuadratureGrid,
}

impl DiscrepancyReport {
    pub fn max_rel_err(&self) -> f64 {
        self.power_rel_err.max(self.mean_rel_err.unwrap_or(0.0))
    }
}

/// Runs both paths on a balanced setup and reports their relative disagreement.
pub fn compare_with_analytics(
    setup: &MeasurementSetup,
    grid: &QuadratureGrid,
) -> Result<DiscrepancyReport> {
    let power_analytic = analytics::power_ratio(setup)?;
    let analytic_mean = analytics::mean_position(setup);
    let numeric = integrate_setup(setup, grid);

    let power_quadrature = match &numeric {
        Ok(n) => n.p_out,
        Err(Error::DarkPort { power }) => *power,
        Err(e) => return Err(e.clone()),
    };
    let power_rel_err = if power_analytic > 0.0 {
        (power_quadrature - power_analytic).abs() / power_analytic
    } else {
        (power_quadrature - power_analytic).abs()
    };

    let mut report = DiscrepancyReport {
        status: ReportStatus::Pass,
        power_analytic,
        power_quadrature,
        power_rel_err,
        mean_analytic: None,
        mean_quadrature: None,
        mean_rel_err: None,
        grid: *grid,
    };

    match (analytic_mean, numeric) {
        (Err(Error::DarkPort { .. }), Err(Error::DarkPort { .. })) => {
            report.status = ReportStatus::DarkPort;
        }
        (Ok(ma), Ok(n)) => {
            let c = &setup.coupling;
            let mut scale = ma
                .abs()
                .max(setup.pointer.center().abs())
                .max(c.delta1.abs())
                .max(c.delta2.abs());
            if scale == 0.0 {
                scale = setup.pointer.waist();
            }
            let err = (n.mean_x - ma).abs() / scale;
            report.mean_analytic = Some(ma);
            report.mean_quadrature = Some(n.mean_x);
            report.mean_rel_err = Some(err);
            if !(err <= FAIL_THRESHOLD && power_rel_err <= FAIL_THRESHOLD) {
                report.status = ReportStatus::Fail;
            }
        }
        // the two paths disagree on whether the port is dark
        (Ok(ma), Err(_)) => {
            report.mean_analytic = Some(ma);
            report.status = ReportStatus::Fail;
        }
        (Err(Error::DarkPort { .. }), Ok(n)) => {
            report.mean_quadrature = Some(n.mean_x);
            report.status = ReportStatus::Fail;
        }
        (Err(e), _) => return Err(e),
    }
    Ok(report)
}

pub fn compare_batch(
    strategy: parallel::Strategy,
    setups: &[MeasurementSetup],
    grid: &QuadratureGrid,
) -> Vec<Result<DiscrepancyReport>> {
    parallel::map_with(strategy, setups, |s| compare_with_analytics(s, grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_balanced_pre, make_post, PostSelectionAngles};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    const W0: f64 = 10e-6;

    fn pointer() -> GaussianPointer {
        GaussianPointer::new(W0).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(QuadratureGrid::new(8.0, 4001).is_ok());
        assert!(QuadratureGrid::new(8.0, 4000).is_err());
        assert!(QuadratureGrid::new(8.0, 1).is_err());
        assert!(QuadratureGrid::new(3.9, 101).is_err());
        assert!(QuadratureGrid::new(f64::NAN, 101).is_err());
        assert_eq!(
            QuadratureGrid::default(),
            QuadratureGrid::new(8.0, 4001).unwrap()
        );
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let v = simpson(|x| 1.0 + x + 3.0 * x * x - x * x * x, 1.0, 1.0, 3);
        // ∫₀² (1 + x + 3x² − x³) dx = 2 + 2 + 8 − 4
        assert_relative_eq!(v, 8.0, max_relative = 1e-15);
        let m = simpson_moments(|u| u * u, 2.0, 5);
        assert_relative_eq!(m.mass, 16.0 / 3.0, max_relative = 1e-15);
        assert_eq!(m.first, 0.0);
    }

    #[test]
    fn field_examples() {
        let p = pointer();
        let h = PolarizationState::horizontal();
        let c = CouplingParams::new(3e-9, -1e-9, 0.4);
        let f = output_field_at(&h, &h, &c, &p, 3e-9);
        assert_relative_eq!(f.re, p.peak(), max_relative = 1e-15);
        assert_relative_eq!(p.peak(), (PI * W0 * W0).powf(-0.25), max_relative = 1e-15);
        assert_eq!(f.im, 0.0);

        let dark = make_post(-PI / 4.0, 0.0);
        let same = CouplingParams::new(2e-9, 2e-9, 0.0);
        for x in [-1e-5, 0.0, 4e-6] {
            assert_abs_diff_eq!(
                output_field_at(&make_balanced_pre(), &dark, &same, &p, x).norm(),
                0.0,
                epsilon = 1e-12
            );
        }

        // |field|² is half the closed-form intensity for the balanced input
        let s = MeasurementSetup::balanced(
            PostSelectionAngles::from_degrees(45.0, 0.0),
            CouplingParams::symmetric(10e-9, 0.0),
            p,
        );
        let f = output_field_at(&s.pre, &s.post_state(), &s.coupling, &p, 0.0);
        let i = analytics::intensity_at(&s, 0.0).unwrap();
        assert_relative_eq!(2.0 * f.norm_sqr(), i, max_relative = 1e-14);
    }

    #[test]
    fn displaced_gaussian() {
        let h = PolarizationState::horizontal();
        let r = integrate(
            &h,
            &h,
            &CouplingParams::new(3e-9, 0.0, 0.0),
            &pointer(),
            &QuadratureGrid::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(r.p_out, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.mean_x, 3e-9, epsilon = 1e-12 * 3e-9);
    }

    #[test]
    fn fig1_scenario_matches_closed_form() {
        let g = analytics::gamma(&CouplingParams::symmetric(10e-9, 0.0), &pointer());
        let theta = 0.01f64.to_radians();
        let o = analytics::optimal_angle(g, theta).unwrap();
        let s = MeasurementSetup::balanced(
            PostSelectionAngles::new(o.alpha0, -theta),
            CouplingParams::symmetric(10e-9, 0.0),
            pointer(),
        );
        let r = integrate_setup(&s, &QuadratureGrid::default()).unwrap();
        let m = analytics::mean_position(&s).unwrap();
        assert_relative_eq!(r.mean_x, m, max_relative = 1e-9);
        assert_relative_eq!(r.mean_x, 7.017829536706e-6, max_relative = 1e-7);
    }

    #[test]
    fn orthogonal_phase_gives_half_power() {
        for alpha in [-80.0, -45.0, -10.0, 0.0, 30.0, 45.0, 89.0] {
            let s = MeasurementSetup::balanced(
                PostSelectionAngles::from_degrees(alpha, -90.0),
                CouplingParams::symmetric(10e-9, 0.0),
                pointer(),
            );
            let r = integrate_setup(&s, &QuadratureGrid::default()).unwrap();
            assert_abs_diff_eq!(r.p_out, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn report_examples() {
        let fig4 = MeasurementSetup::balanced(
            PostSelectionAngles::from_degrees(45.0, 0.0),
            CouplingParams::symmetric(10e-9, 0.0),
            pointer(),
        );
        let r = compare_with_analytics(&fig4, &QuadratureGrid::default()).unwrap();
        assert_eq!(r.status, ReportStatus::Pass);
        assert!(
            r.power_rel_err < 1e-9 && r.mean_rel_err.unwrap() < 1e-9,
            "{r:?}"
        );

        let dark = MeasurementSetup::balanced(
            PostSelectionAngles::from_degrees(-45.0, 0.0),
            CouplingParams::new(0.0, 0.0, 0.0),
            pointer(),
        );
        let r = compare_with_analytics(&dark, &QuadratureGrid::default()).unwrap();
        assert_eq!(r.status, ReportStatus::DarkPort);
        assert_eq!(r.mean_rel_err, None);

        let skewed = MeasurementSetup::balanced(
            PostSelectionAngles::from_degrees(-30.0, 10.0),
            CouplingParams::new(2e-6, -1e-6, 0.3),
            pointer(),
        );
        let coarse = QuadratureGrid::new(8.0, 5).unwrap();
        let r = compare_with_analytics(&skewed, &coarse).unwrap();
        assert_eq!(r.status, ReportStatus::Fail);
        assert!(r.max_rel_err() > FAIL_THRESHOLD);
    }

    #[test]
    fn report_requires_balanced_pre() {
        let s = MeasurementSetup::new(
            PolarizationState::horizontal(),
            PostSelectionAngles::new(0.0, 0.0),
            CouplingParams::new(0.0, 0.0, 0.0),
            pointer(),
        );
        assert_eq!(
            compare_with_analytics(&s, &QuadratureGrid::default()),
            Err(Error::UnsupportedPreSelection)
        );
    }

    #[test]
    fn tail_truncation_is_negligible() {
        let s = MeasurementSetup::balanced(
            PostSelectionAngles::from_degrees(20.0, 5.0),
            CouplingParams::new(1e-6, -0.5e-6, 0.2),
            pointer(),
        );
        let a = integrate_setup(&s, &QuadratureGrid::new(8.0, 4001).unwrap()).unwrap();
        let b = integrate_setup(&s, &QuadratureGrid::new(12.0, 6001).unwrap()).unwrap();
        assert!((a.p_out - b.p_out).abs() < 1e-12);
    }
}
