//! Human-unit scenario parameters and their conversion to the model.

use weakint::{CouplingParams, GaussianPointer, MeasurementSetup, PostSelectionAngles};

use crate::args::ScenarioArgs;
use crate::error::{CliError, CliResult};
use crate::format::Table;

pub const NM: f64 = 1e-9;
pub const UM: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase {
    /// `φ = θ`, `ξ = 0`.
    Theta(f64),
    PhiXi {
        phi: f64,
        xi: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shift {
    Symmetric(f64),
    Pair(f64, f64),
}

/// Degrees, nanometres and micrometres exactly as the user wrote them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub alpha_deg: f64,
    pub phase: Phase,
    pub shift: Shift,
    pub waist_um: f64,
}

impl Scenario {
    pub fn with_alpha(mut self, alpha_deg: f64) -> Self {
        self.alpha_deg = alpha_deg;
        self
    }

    pub fn with_theta(mut self, theta_deg: f64) -> Self {
        self.phase = Phase::Theta(theta_deg);
        self
    }

    pub fn with_delta(mut self, delta_nm: f64) -> Self {
        self.shift = Shift::Symmetric(delta_nm);
        self
    }

    pub fn setup(&self) -> CliResult<MeasurementSetup> {
        let (phi, xi) = match self.phase {
            Phase::Theta(t) => (t.to_radians(), 0.0),
            Phase::PhiXi { phi, xi } => (phi.to_radians(), xi.to_radians()),
        };
        let (d1, d2) = match self.shift {
            Shift::Symmetric(d) => (d * NM, -d * NM),
            Shift::Pair(a, b) => (a * NM, b * NM),
        };
        let waist = self.waist_um * UM;
        if !(waist.is_finite() && waist > 0.0) {
            return Err(CliError::Usage(format!(
                "--waist-um must be positive, got {}",
                self.waist_um
            )));
        }
        if ![self.alpha_deg, phi, xi, d1, d2]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(CliError::Usage("scenario parameters must be finite".into()));
        }
        Ok(MeasurementSetup::balanced(
            PostSelectionAngles::new(self.alpha_deg.to_radians(), xi),
            CouplingParams::new(d1, d2, phi),
            GaussianPointer::new(waist)?,
        ))
    }

    /// Echoes the parameters into a header; `skip` names the swept ones.
    pub fn describe(&self, table: &mut Table, skip: &[&str]) {
        let mut put = |k: &str, v: f64| {
            if !skip.contains(&k) {
                table.meta(k, v);
            }
        };
        put("alpha_deg", self.alpha_deg);
        match self.phase {
            Phase::Theta(t) => put("theta_deg", t),
            Phase::PhiXi { phi, xi } => {
                put("phi_deg", phi);
                put("xi_deg", xi);
            }
        }
        match self.shift {
            Shift::Symmetric(d) => put("delta_nm", d),
            Shift::Pair(a, b) => {
                put("delta1_nm", a);
                put("delta2_nm", b);
            }
        }
        put("waist_um", self.waist_um);
    }
}

impl ScenarioArgs {
    pub fn resolve(&self, defaults: Scenario) -> Scenario {
        let phase = match (self.theta_deg, self.phi_deg, self.xi_deg) {
            (Some(t), _, None) => Phase::Theta(t),
            (Some(t), _, Some(xi)) => Phase::PhiXi { phi: t + xi, xi },
            (None, None, None) => defaults.phase,
            (None, phi, xi) => Phase::PhiXi {
                phi: phi.unwrap_or(0.0),
                xi: xi.unwrap_or(0.0),
            },
        };
        let shift = match (self.delta_nm, self.delta1_nm, self.delta2_nm) {
            (Some(d), _, _) => Shift::Symmetric(d),
            (None, None, None) => defaults.shift,
            (None, a, b) => Shift::Pair(a.unwrap_or(0.0), b.unwrap_or(0.0)),
        };
        Scenario {
            alpha_deg: self.alpha_deg.unwrap_or(defaults.alpha_deg),
            phase,
            shift,
            waist_um: self.waist_um.unwrap_or(defaults.waist_um),
        }
    }

    /// Rejects overrides of a parameter the command sweeps itself.
    pub fn forbid(&self, flags: &[&str], reason: &str) -> CliResult<()> {
        let given = |f: &str| match f {
            "alpha-deg" => self.alpha_deg.is_some(),
            "theta-deg" => self.theta_deg.is_some(),
            "xi-deg" => self.xi_deg.is_some(),
            "phi-deg" => self.phi_deg.is_some(),
            "delta-nm" => self.delta_nm.is_some(),
            "delta1-nm" => self.delta1_nm.is_some(),
            "delta2-nm" => self.delta2_nm.is_some(),
            "waist-um" => self.waist_um.is_some(),
            _ => false,
        };
        match flags.iter().find(|f| given(f)) {
            Some(f) => Err(CliError::Usage(format!(
                "--{f} cannot be used here: {reason}"
            ))),
            None => Ok(()),
        }
    }
}
