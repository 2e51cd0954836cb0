//! `estimate`, `verify`, `oam` and `sweep`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use weakint::oam::{self, OamMode, OamSetup, SpectralPointer};
use weakint::quadrature::{self, QuadratureGrid, ReportStatus};
use weakint::{
    analytics, ensemble, estimation, parallel, Complex64, CouplingParams, GaussianPointer,
    MeasurementSetup, PostSelectionAngles,
};

use crate::args::{EstimateArgs, GridArgs, OamArgs, SweepArgs, SweepVar, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::figures::{self, db, FIG3_ALPHAS_DEG, FIG4_THETAS_DEG, GUARD_POWER_RATIO};
use crate::format::{Cell, OutputFormat, Table};
use crate::plot::PlotSpec;
use crate::scenario::{Phase, Scenario, Shift, NM, UM};
use crate::Output;

impl GridArgs {
    pub fn grid(&self) -> CliResult<QuadratureGrid> {
        let d = QuadratureGrid::default();
        Ok(QuadratureGrid::new(
            self.extent.unwrap_or(d.half_extent_in_waists()),
            self.samples.unwrap_or(d.samples()),
        )?)
    }
}

pub fn estimate(args: &EstimateArgs) -> CliResult<Output> {
    let alpha = args.alpha_deg.to_radians();
    let theta = args.theta_deg.to_radians();
    let waist = args.waist_um * UM;

    let mut table;
    match args.loss {
        Some(loss) => {
            let input = estimation::EstimationInput::new(loss, alpha, theta, waist)
                .with_noise_floor(args.noise_floor);
            let r = estimation::invert_fractional_loss(&input)?;
            table = Table::new([
                "delta_minus_nm",
                "gamma_inferred",
                "sensitivity_per_m",
                "min_detectable_nm",
            ]);
            table.push(vec![
                (r.delta_minus / NM).into(),
                r.gamma_inferred.into(),
                r.sensitivity.into(),
                r.min_detectable.map(|m| m / NM).into(),
            ]);
        }
        None => {
            let m = estimation::min_detectable_shift(args.noise_floor, alpha, theta, waist)?;
            table = Table::new(["min_detectable_nm"]);
            table.push(vec![(m / NM).into()]);
        }
    }
    let mut header = Table::new(table.columns().to_vec());
    if let Some(loss) = args.loss {
        header.meta("loss", loss);
    }
    header
        .meta("alpha_deg", args.alpha_deg)
        .meta("theta_deg", args.theta_deg)
        .meta("waist_um", args.waist_um)
        .meta("noise_floor", args.noise_floor);
    for row in table.rows() {
        header.push(row.clone());
    }
    Ok(Output::new(header).with_default_format(OutputFormat::Table))
}

/// The fixed part of the verification battery: points from each figure.
pub fn figure_battery() -> CliResult<Vec<(String, MeasurementSetup)>> {
    let mut out = Vec::new();
    let fig12 = figures::defaults(1);
    let base = fig12.setup()?;
    let g = analytics::gamma(&base.coupling, &base.pointer);
    let opt = analytics::optimal_angle(g, base.theta())?;
    out.push(("fig1_alpha_opt".to_string(), {
        let mut s = base;
        s.post.alpha = opt.alpha0;
        s
    }));
    for a in [-30.0, -60.0] {
        out.push((format!("fig1_alpha_{a}"), fig12.with_alpha(a).setup()?));
    }
    for a in [-45.0, -90.0] {
        out.push((format!("fig2_alpha_{a}"), fig12.with_alpha(a).setup()?));
    }
    let fig3 = figures::defaults(3);
    for a in FIG3_ALPHAS_DEG {
        let s = fig3.with_alpha(a).with_theta(30.0).setup()?;
        out.push((format!("fig3_alpha_{a}_theta_30"), s));
    }
    let fig4 = figures::defaults(4);
    for t in FIG4_THETAS_DEG {
        let s = fig4.with_theta(t).with_delta(50.0).setup()?;
        out.push((format!("fig4_theta_{t}_delta_50"), s));
    }
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> CliResult<Output> {
    let grid = args.grid.grid()?;
    let mut battery = figure_battery()?;
    battery.extend(
        ensemble::random_balanced_setups(args.seed, args.cases)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (format!("random_{i:04}"), s)),
    );
    let setups: Vec<MeasurementSetup> = battery.iter().map(|(_, s)| *s).collect();
    let reports = quadrature::compare_batch(parallel::Strategy::default(), &setups, &grid)
        .into_iter()
        .collect::<weakint::Result<Vec<_>>>()?;

    let mut table = Table::new([
        "scenario",
        "status",
        "power_ratio",
        "power_rel_err",
        "mean_rel_err",
    ]);
    let (mut pass, mut fail, mut dark) = (0usize, 0usize, 0usize);
    let mut max_err: f64 = 0.0;
    for ((name, _), r) in battery.iter().zip(&reports) {
        match r.status {
            ReportStatus::Pass => pass += 1,
            ReportStatus::Fail => fail += 1,
            ReportStatus::DarkPort => dark += 1,
        }
        if r.status != ReportStatus::DarkPort {
            // NaN from a broken integral must not hide behind `max`
            max_err = if r.max_rel_err().is_nan() {
                f64::NAN
            } else {
                max_err.max(r.max_rel_err())
            };
        }
        table.push(vec![
            name.as_str().into(),
            r.status.label().into(),
            r.power_analytic.into(),
            r.power_rel_err.into(),
            r.mean_rel_err.into(),
        ]);
    }

    let mut report = Table::new(table.columns().to_vec());
    report
        .meta("seed", args.seed)
        .meta("random_cases", args.cases)
        .meta("samples", grid.samples())
        .meta("extent", grid.half_extent_in_waists())
        .meta("threshold", quadrature::FAIL_THRESHOLD)
        .meta("pass", pass)
        .meta("fail", fail)
        .meta("dark_port", dark)
        .meta("max_rel_err", crate::format::sci(max_err))
        .meta("result", if fail == 0 { "PASS" } else { "FAIL" });
    for row in table.rows() {
        report.push(row.clone());
    }
    let mut out = Output::new(report).with_default_format(OutputFormat::Table);
    out.failures = fail;
    Ok(out)
}

fn oam_setup(args: &OamArgs) -> CliResult<OamSetup> {
    let spectrum = SpectralPointer {
        center: TAU * args.center_hz,
        width: TAU * args.sigma_hz,
    };
    let omega = TAU * args.omega_hz;
    let phi = args.phi_deg.unwrap_or(0.0).to_radians();
    let n = args.modes.len();
    let mut modes: Vec<OamMode> = match args.alpha_deg {
        Some(a) => {
            if n != 2 {
                return Err(CliError::Usage(format!(
                    "--alpha-deg needs exactly two modes, got {n}"
                )));
            }
            let post =
                PostSelectionAngles::new(a.to_radians(), args.xi_deg.unwrap_or(0.0).to_radians())
                    .state();
            let amp = Complex64::new(FRAC_1_SQRT_2, 0.0);
            vec![
                OamMode::new(args.modes[0], amp, post.h()),
                OamMode::new(args.modes[1], amp, post.v()),
            ]
        }
        None => {
            let amp = Complex64::new((n as f64).sqrt().recip(), 0.0);
            args.modes
                .iter()
                .map(|&m| OamMode::new(m, amp, amp))
                .collect()
        }
    };
    if let Some(last) = modes.last_mut() {
        *last = last.with_phase(phi);
    }
    Ok(OamSetup::new(modes, omega, spectrum)?)
}

/// The same two-mode experiment expressed as a position measurement.
fn two_mode_counterpart(args: &OamArgs, setup: &OamSetup) -> CliResult<Option<MeasurementSetup>> {
    let (Some(a), [m0, m1]) = (args.alpha_deg, setup.modes()) else {
        return Ok(None);
    };
    let omega = setup.omega_rot();
    Ok(Some(MeasurementSetup::balanced(
        PostSelectionAngles::new(a.to_radians(), args.xi_deg.unwrap_or(0.0).to_radians()),
        CouplingParams::new(
            -oam::mode_shift(m0.m, omega),
            -oam::mode_shift(m1.m, omega),
            m1.extra_phase,
        ),
        GaussianPointer::new(setup.spectrum().width)?,
    )))
}

pub fn oam(args: &OamArgs) -> CliResult<Output> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let grid = args.grid.grid()?;
    let setup = oam_setup(args)?;
    let moments = oam::spectral_moments(&setup, &grid)?;

    let mut table = Table::new(["nu_rad_s", "spectral_density"]);
    let modes: Vec<String> = args.modes.iter().map(i32::to_string).collect();
    table
        .meta("modes", modes.join(","))
        .meta("omega_hz", args.omega_hz)
        .meta("sigma_hz", args.sigma_hz)
        .meta("center_hz", args.center_hz);
    if let Some(a) = args.alpha_deg {
        table.meta("alpha_deg", a);
    }
    if let Some(x) = args.xi_deg {
        table.meta("xi_deg", x);
    }
    if let Some(p) = args.phi_deg {
        table.meta("phi_deg", p);
    }
    table
        .meta("points", args.points)
        .meta("samples", grid.samples())
        .meta("extent", grid.half_extent_in_waists())
        .meta("power_ratio", crate::format::sci(moments.power))
        .meta("mean_shift_rad_s", crate::format::sci(moments.mean_shift))
        .meta(
            "mean_shift_hz",
            crate::format::sci(moments.mean_shift / TAU),
        );
    if let Some(m) = two_mode_counterpart(args, &setup)? {
        if let Ok(x) = analytics::mean_position(&m) {
            table.meta("closed_form_mean_shift_rad_s", crate::format::sci(x));
        }
    }
    let extent = grid.half_extent_in_waists();
    for (nu, s) in oam::spectrum_samples(&setup, extent, args.points) {
        table.push(vec![nu.into(), s.into()]);
    }
    Ok(Output::new(table).with_plot(PlotSpec::new(
        "Post-selected spectrum",
        "omega - omega0 (rad/s)",
        "spectral density",
        vec![2],
    )))
}

pub fn sweep(args: &SweepArgs) -> CliResult<Output> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let sc = &args.scenario;
    let key = match args.over {
        SweepVar::Alpha => {
            sc.forbid(&["alpha-deg"], "α is the swept variable")?;
            "alpha_deg"
        }
        SweepVar::Theta => {
            sc.forbid(
                &["theta-deg", "phi-deg", "xi-deg"],
                "θ is the swept variable",
            )?;
            "theta_deg"
        }
        SweepVar::Delta => {
            sc.forbid(
                &["delta-nm", "delta1-nm", "delta2-nm"],
                "the shift is the swept variable",
            )?;
            "delta_nm"
        }
    };
    let scenario = sc.resolve(Scenario {
        alpha_deg: 45.0,
        phase: Phase::Theta(0.0),
        shift: Shift::Symmetric(10.0),
        waist_um: 10.0,
    });
    scenario.setup()?;

    let mut table = Table::new([
        key,
        "gamma",
        "power_ratio",
        "loss_db",
        "fractional_loss",
        "amplification",
        "mean_position_m",
    ]);
    table.meta("sweep", key);
    scenario.describe(&mut table, &[key]);
    table
        .meta("from", args.from)
        .meta("to", args.to)
        .meta("points", args.points)
        .meta("guard_power_ratio", GUARD_POWER_RATIO);

    let xs = parallel::linspace(args.from, args.to, args.points);
    let rows = parallel::map(&xs, |&x| -> CliResult<Vec<Cell>> {
        let s = match args.over {
            SweepVar::Alpha => scenario.with_alpha(x),
            SweepVar::Theta => scenario.with_theta(x),
            SweepVar::Delta => scenario.with_delta(x),
        };
        let p = figures::evaluate(&s)?;
        Ok(vec![
            x.into(),
            p.gamma.into(),
            p.power_ratio.into(),
            db(p.power_ratio),
            p.fractional_loss.into(),
            p.amplification.into(),
            p.mean_position.into(),
        ])
    });
    for r in rows {
        table.push(r?);
    }
    Ok(Output::new(table).with_plot(PlotSpec::new("Sweep", key, "power ratio", vec![3])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{OutputArgs, ScenarioArgs};

    fn est(loss: Option<f64>) -> EstimateArgs {
        EstimateArgs {
            loss,
            alpha_deg: 45.0,
            theta_deg: 0.0,
            waist_um: 10.0,
            noise_floor: 1e-7,
            output: OutputArgs::default(),
        }
    }

    fn num(c: &Cell) -> f64 {
        match c {
            Cell::Num(x) => *x,
            other => panic!("not a number: {other:?}"),
        }
    }

    fn oam_args(modes: &[i32]) -> OamArgs {
        OamArgs {
            modes: modes.to_vec(),
            omega_hz: 100.0,
            sigma_hz: 1000.0,
            center_hz: 0.0,
            alpha_deg: None,
            xi_deg: None,
            phi_deg: None,
            points: 11,
            grid: GridArgs::default(),
            output: OutputArgs::default(),
        }
    }

    fn meta(text: &str, key: &str) -> f64 {
        let prefix = format!("# {key}=");
        text.lines()
            .find_map(|l| l.strip_prefix(prefix.as_str()))
            .unwrap_or_else(|| panic!("no {key}"))
            .parse()
            .unwrap()
    }

    #[test]
    fn estimate_recovers_twenty_nanometres() {
        let out = estimate(&est(Some(-5.0e-7))).unwrap();
        let row = &out.table.rows()[0];
        // −5.0e−7 is the rounded forward value at 20 nm
        let exact = 2e4 * (-(-1e-6f64).ln_1p()).sqrt();
        assert!((num(&row[0]) - exact).abs() < 1e-9 * exact);
        assert!((num(&row[0]) - 20.0).abs() < 1e-4);
        assert!((num(&row[3]) - 8.944).abs() < 1e-3);
    }

    #[test]
    fn estimate_floor_query() {
        let out = estimate(&est(None)).unwrap();
        let m = num(&out.table.rows()[0][0]);
        assert!((m - 8.944272).abs() < 1e-5, "{m}");
    }

    #[test]
    fn estimate_error_codes_are_distinct() {
        let out_of_range = estimate(&est(Some(-0.6))).unwrap_err();
        assert_eq!(out_of_range.exit_code(), 3);
        assert!(out_of_range.to_string().contains("-0.6"));
        let mut a = est(Some(-0.1));
        a.alpha_deg = -45.0;
        assert_eq!(estimate(&a).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn verify_passes_by_default_and_fails_coarse() {
        let mut args = VerifyArgs {
            seed: 42,
            cases: 20,
            grid: GridArgs::default(),
            output: OutputArgs::default(),
        };
        let ok = verify(&args).unwrap();
        assert_eq!(ok.failures, 0);
        let text = ok.render(Some(OutputFormat::Csv));
        assert!(text.contains("# result=PASS\n"));
        assert!(meta(&text, "max_rel_err") < 1e-9);

        args.grid.samples = Some(5);
        let bad = verify(&args).unwrap();
        assert!(bad.failures > 0);
        assert!(bad.render(None).contains("FAIL"));
    }

    #[test]
    fn single_mode_shift() {
        let out = oam(&oam_args(&[1])).unwrap();
        let text = out.render(None);
        assert_eq!(meta(&text, "mean_shift_hz"), -200.0);
    }

    #[test]
    fn symmetric_modes_do_not_shift() {
        let out = oam(&oam_args(&[-1, 0, 1])).unwrap();
        let shift = meta(&out.render(None), "mean_shift_rad_s");
        assert!(shift.abs() < 1e-9, "{shift}");
    }

    #[test]
    fn two_mode_matches_position_model() {
        let mut a = oam_args(&[1, -1]);
        a.alpha_deg = Some(-40.0);
        a.phi_deg = Some(3.0);
        let text = oam(&a).unwrap().render(None);
        let numeric = meta(&text, "mean_shift_rad_s");
        let closed = meta(&text, "closed_form_mean_shift_rad_s");
        assert!((numeric - closed).abs() <= 1e-9 * closed.abs());
        a.modes = vec![1, 0, -1];
        assert_eq!(oam(&a).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn sweep_rejects_its_own_variable() {
        let args = SweepArgs {
            over: SweepVar::Alpha,
            from: 0.0,
            to: 10.0,
            points: 3,
            scenario: ScenarioArgs {
                alpha_deg: Some(1.0),
                ..Default::default()
            },
            output: OutputArgs::default(),
        };
        assert_eq!(sweep(&args).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn sweep_over_delta() {
        let args = SweepArgs {
            over: SweepVar::Delta,
            from: 0.0,
            to: 20.0,
            points: 3,
            scenario: ScenarioArgs::default(),
            output: OutputArgs::default(),
        };
        let out = sweep(&args).unwrap();
        assert_eq!(out.table.columns()[0], "delta_nm");
        let f0 = num(&out.table.rows()[0][4]);
        let f10 = num(&out.table.rows()[1][4]);
        assert_eq!(f0, 0.0);
        assert!((f10 - 0.5 * (-1e-6f64).exp_m1()).abs() < 1e-18);
    }
}
