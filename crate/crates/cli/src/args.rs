use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::format::OutputFormat;

#[derive(Debug, Parser)]
#[command(
    name = "weakint",
    version,
    about = "Weak-measurement interference toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the data behind one of the four standard figures.
    Figure(FigureArgs),
    /// Infer the beam-shift difference from a measured fractional loss.
    Estimate(EstimateArgs),
    /// Cross-check closed forms against numerical integration.
    Verify(VerifyArgs),
    /// Post-selected spectrum of superposed OAM modes behind a rotating prism.
    Oam(OamArgs),
    /// Sweep one scenario parameter and tabulate every observable.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub out: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Also write a gnuplot script next to the data file as `<out>.gp`.
    #[arg(long, requires = "out")]
    pub emit_plot: bool,
}

/// Scenario overrides in laboratory units.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Post-selection analyzer angle α.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_deg: Option<f64>,
    /// Relative phase θ = φ − ξ; sets φ = θ with ξ = 0.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "phi_deg")]
    pub theta_deg: Option<f64>,
    /// Post-selection phase ξ.
    #[arg(long, allow_hyphen_values = true)]
    pub xi_deg: Option<f64>,
    /// Coupling phase φ on the V component.
    #[arg(long, allow_hyphen_values = true)]
    pub phi_deg: Option<f64>,
    /// Symmetric shift, Δ₁ = Δ and Δ₂ = −Δ.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["delta1_nm", "delta2_nm"])]
    pub delta_nm: Option<f64>,
    /// Shift of the H component; Δ₂ defaults to 0 when only this is given.
    #[arg(long, allow_hyphen_values = true)]
    pub delta1_nm: Option<f64>,
    /// Shift of the V component; Δ₁ defaults to 0 when only this is given.
    #[arg(long, allow_hyphen_values = true)]
    pub delta2_nm: Option<f64>,
    /// Pointer waist w₀.
    #[arg(long, allow_hyphen_values = true)]
    pub waist_um: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Simpson sample count (odd).
    #[arg(long, allow_hyphen_values = true)]
    pub samples: Option<usize>,
    /// Grid half-extent in pointer widths.
    #[arg(long, allow_hyphen_values = true)]
    pub extent: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
    pub number: u8,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2001)]
    pub points: usize,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Measured fractional loss ΔP/P; omit to only report the detection limit.
    #[arg(long, allow_hyphen_values = true)]
    pub loss: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 45.0)]
    pub alpha_deg: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub theta_deg: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 10.0)]
    pub waist_um: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = weakint::estimation::DEFAULT_NOISE_FLOOR)]
    pub noise_floor: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 42)]
    pub seed: u64,
    /// Number of random setups added to the fixed battery.
    #[arg(long, allow_hyphen_values = true, default_value_t = 200)]
    pub cases: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OamArgs {
    /// Comma-separated mode indices, e.g. `1,-1`.
    #[arg(
        long,
        allow_hyphen_values = true,
        value_delimiter = ',',
        required = true
    )]
    pub modes: Vec<i32>,
    /// Prism rotation rate Ω/2π.
    #[arg(long, allow_hyphen_values = true, default_value_t = 100.0)]
    pub omega_hz: f64,
    /// Spectral width σ/2π of the input light.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1000.0)]
    pub sigma_hz: f64,
    /// Carrier ω₀/2π.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub center_hz: f64,
    /// Two-mode analyzer angle; the first mode plays H and the second V.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_deg: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "alpha_deg")]
    pub xi_deg: Option<f64>,
    /// Extra phase on the last listed mode.
    #[arg(long, allow_hyphen_values = true)]
    pub phi_deg: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2001)]
    pub points: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    /// α in degrees.
    Alpha,
    /// θ in degrees.
    Theta,
    /// Symmetric shift Δ in nanometres.
    Delta,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true, value_enum)]
    pub over: SweepVar,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2001)]
    pub points: usize,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
