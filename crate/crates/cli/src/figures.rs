//! The four standard figure sweeps, computed from closed forms only.

use weakint::{analytics, parallel};

use crate::args::FigureArgs;
use crate::error::{CliError, CliResult};
use crate::format::{Cell, Table};
use crate::plot::PlotSpec;
use crate::scenario::{Phase, Scenario, Shift};
use crate::Output;

pub const FIGURE_THETA_DEG: f64 = 0.01;
pub const FIGURE_DELTA_NM: f64 = 10.0;
pub const FIGURE_WAIST_UM: f64 = 10.0;
pub const FIG3_ALPHAS_DEG: [f64; 4] = [45.0, 0.0, -30.0, -45.0];
pub const FIG4_ALPHA_DEG: f64 = 45.0;
pub const FIG4_THETAS_DEG: [f64; 4] = [0.0, 0.1, 0.2, 0.3];
pub const ALPHA_RANGE_DEG: (f64, f64) = (-90.0, 0.0);
pub const THETA_RANGE_DEG: (f64, f64) = (-90.0, 90.0);
pub const DELTA_RANGE_NM: (f64, f64) = (0.0, 50.0);
/// Below this post-selected power the amplification is left blank.
pub const GUARD_POWER_RATIO: f64 = 1e-12;

pub fn defaults(n: u8) -> Scenario {
    let base = Scenario {
        alpha_deg: 0.0,
        phase: Phase::Theta(FIGURE_THETA_DEG),
        shift: Shift::Symmetric(FIGURE_DELTA_NM),
        waist_um: FIGURE_WAIST_UM,
    };
    match n {
        3 => base.with_theta(0.0),
        4 => base
            .with_alpha(FIG4_ALPHA_DEG)
            .with_theta(0.0)
            .with_delta(0.0),
        _ => base,
    }
}

fn label(x: f64) -> String {
    format!("{x}")
}

fn sweep<F>(xs: &[f64], row: F) -> CliResult<Vec<Vec<Cell>>>
where
    F: Fn(f64) -> CliResult<Vec<Cell>> + Sync,
{
    parallel::map(xs, |&x| row(x)).into_iter().collect()
}

/// Closed-form observables at one sweep point; amplification and mean are
/// blank inside the guard band around the dark fringe.
pub struct Point {
    pub power_ratio: f64,
    pub fractional_loss: f64,
    pub gamma: f64,
    pub amplification: Option<f64>,
    pub mean_position: Option<f64>,
}

pub fn evaluate(s: &Scenario) -> CliResult<Point> {
    let setup = s.setup()?;
    let power_ratio = analytics::power_ratio(&setup)?;
    let resolved = power_ratio >= GUARD_POWER_RATIO;
    Ok(Point {
        power_ratio,
        fractional_loss: analytics::fractional_loss(&setup)?,
        gamma: analytics::gamma(&setup.coupling, &setup.pointer),
        amplification: resolved
            .then(|| analytics::amplification(&setup).ok())
            .flatten(),
        mean_position: resolved
            .then(|| analytics::mean_position(&setup).ok())
            .flatten(),
    })
}

pub fn db(power_ratio: f64) -> Cell {
    analytics::loss_db(power_ratio).ok().into()
}

pub fn run(args: &FigureArgs) -> CliResult<Output> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let sc = &args.scenario;
    sc.forbid(
        &["xi-deg", "phi-deg"],
        "figure sweeps take the phase from --theta-deg",
    )?;
    let scenario = sc.resolve(defaults(args.number));
    scenario.setup()?;

    let mut table;
    let plot;
    match args.number {
        1 | 2 => {
            sc.forbid(&["alpha-deg"], "α is the swept variable")?;
            let xs = parallel::linspace(ALPHA_RANGE_DEG.0, ALPHA_RANGE_DEG.1, args.points);
            let fig1 = args.number == 1;
            table = if fig1 {
                Table::new(["alpha_deg", "amplification", "mean_position_m"])
            } else {
                Table::new(["alpha_deg", "power_ratio", "loss_db"])
            };
            table.meta("figure", args.number);
            scenario.describe(&mut table, &["alpha_deg"]);
            table
                .meta("alpha_from_deg", ALPHA_RANGE_DEG.0)
                .meta("alpha_to_deg", ALPHA_RANGE_DEG.1)
                .meta("points", args.points);
            if fig1 {
                table.meta("guard_power_ratio", GUARD_POWER_RATIO);
            }
            for r in sweep(&xs, |a| {
                let p = evaluate(&scenario.with_alpha(a))?;
                Ok(if fig1 {
                    vec![a.into(), p.amplification.into(), p.mean_position.into()]
                } else {
                    vec![a.into(), p.power_ratio.into(), db(p.power_ratio)]
                })
            })? {
                table.push(r);
            }
            plot = if fig1 {
                PlotSpec::new(
                    "Weak amplification",
                    "alpha (deg)",
                    "amplification",
                    vec![2],
                )
            } else {
                PlotSpec::new("Signal loss", "alpha (deg)", "loss (dB)", vec![3])
            };
        }
        3 => {
            sc.forbid(&["theta-deg"], "θ is the swept variable")?;
            let alphas = match sc.alpha_deg {
                Some(a) => vec![a],
                None => FIG3_ALPHAS_DEG.to_vec(),
            };
            let xs = parallel::linspace(THETA_RANGE_DEG.0, THETA_RANGE_DEG.1, args.points);
            table = Table::new(
                std::iter::once("theta_deg".to_string()).chain(
                    alphas
                        .iter()
                        .map(|a| format!("loss_db_alpha_{}", label(*a))),
                ),
            );
            table.meta("figure", args.number);
            scenario.describe(&mut table, &["alpha_deg", "theta_deg"]);
            table
                .meta(
                    "alpha_lines_deg",
                    alphas
                        .iter()
                        .map(|a| label(*a))
                        .collect::<Vec<_>>()
                        .join(","),
                )
                .meta("theta_from_deg", THETA_RANGE_DEG.0)
                .meta("theta_to_deg", THETA_RANGE_DEG.1)
                .meta("points", args.points);
            for r in sweep(&xs, |t| {
                let mut row = vec![t.into()];
                for &a in &alphas {
                    let p = evaluate(&scenario.with_alpha(a).with_theta(t))?;
                    row.push(db(p.power_ratio));
                }
                Ok(row)
            })? {
                table.push(r);
            }
            plot = PlotSpec::new(
                "Signal loss",
                "theta (deg)",
                "loss (dB)",
                (2..=alphas.len() + 1).collect(),
            );
        }
        _ => {
            sc.forbid(
                &["delta-nm", "delta1-nm", "delta2-nm"],
                "the shift is the swept variable",
            )?;
            let thetas = match sc.theta_deg {
                Some(t) => vec![t],
                None => FIG4_THETAS_DEG.to_vec(),
            };
            let xs = parallel::linspace(DELTA_RANGE_NM.0, DELTA_RANGE_NM.1, args.points);
            table = Table::new(
                std::iter::once("delta_nm".to_string()).chain(
                    thetas
                        .iter()
                        .map(|t| format!("fractional_loss_theta_{}", label(*t))),
                ),
            );
            table.meta("figure", args.number);
            scenario.describe(&mut table, &["theta_deg", "delta_nm"]);
            table
                .meta(
                    "theta_lines_deg",
                    thetas
                        .iter()
                        .map(|t| label(*t))
                        .collect::<Vec<_>>()
                        .join(","),
                )
                .meta("delta_from_nm", DELTA_RANGE_NM.0)
                .meta("delta_to_nm", DELTA_RANGE_NM.1)
                .meta("points", args.points);
            for r in sweep(&xs, |d| {
                let mut row = vec![d.into()];
                for &t in &thetas {
                    let p = evaluate(&scenario.with_theta(t).with_delta(d))?;
                    row.push(p.fractional_loss.into());
                }
                Ok(row)
            })? {
                table.push(r);
            }
            plot = PlotSpec::new(
                "Fractional loss",
                "delta (nm)",
                "fractional loss",
                (2..=thetas.len() + 1).collect(),
            );
        }
    }
    Ok(Output::new(table).with_plot(plot))
}
