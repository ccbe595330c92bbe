//! Time integrators for the decoupled thermistor system.
//!
//! Every step performs two linear solves: the potential equation with an
//! extrapolated conductivity and the heat equation with a backward
//! difference in time. The schemes differ in how the conductivity and the
//! Joule heating term are extrapolated:
//!
//! | scheme | potential coefficient | Joule term | time difference |
//! |--------|----------------------|------------|-----------------|
//! | `Euler` | `σ(U^{n-1})` | `σ(U^{n-1})\|∇Φ^n\|²` | backward Euler |
//! | `Bdf2` | `2σ(U^{n-1}) - σ(U^{n-2})` | same coefficient, `\|∇Φ^n\|²` | BDF2 |
//! | `Bdf3` | `3σ(U^{n-1}) - 3σ(U^{n-2}) + σ(U^{n-3})` | same coefficient | BDF3 |
//! | `Gao` | `σ(U^n)` (solved after `U^n`) | `2σ(U^{n-1})\|∇Φ^{n-1}\|² - σ(U^{n-2})\|∇Φ^{n-2}\|²` | BDF2 |
//! | `Ext1` | `σ(U^{n-1})` | `σ(U^{n-1})\|∇Φ^n\|²` | BDF2 |

pub mod bdf;
pub mod solves;
mod state;
mod stepper;

pub use bdf::{d_tau, d_tau3};
pub use solves::{potential_solve, temperature_solve_bdf2};
pub use state::TimeState;
pub use stepper::{run_simulation, run_on_space, Integrator, Simulation, StepRecord};

use crate::error::{Error, Result};
use crate::fem::solver::DEFAULT_TOL;
use crate::mesh::ElemKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Euler,
    Bdf2,
    Bdf3,
    Gao,
    Ext1,
}

impl SchemeKind {
    pub fn tag(self) -> &'static str {
        match self {
            SchemeKind::Euler => "euler",
            SchemeKind::Bdf2 => "bdf2",
            SchemeKind::Bdf3 => "bdf3",
            SchemeKind::Gao => "gao",
            SchemeKind::Ext1 => "ext1",
        }
    }

    /// Start-up used when the configuration does not override it.
    pub fn default_start(self) -> StartMode {
        match self {
            SchemeKind::Bdf3 => StartMode::Exact,
            _ => StartMode::EulerStep,
        }
    }

    /// Number of starting levels `U^0..U^{k-1}` the multistep formula needs.
    pub fn start_levels(self) -> usize {
        match self {
            SchemeKind::Euler => 1,
            SchemeKind::Bdf2 | SchemeKind::Gao | SchemeKind::Ext1 => 2,
            SchemeKind::Bdf3 => 3,
        }
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "euler" => SchemeKind::Euler,
            "bdf2" => SchemeKind::Bdf2,
            "bdf3" => SchemeKind::Bdf3,
            "gao" => SchemeKind::Gao,
            "ext1" => SchemeKind::Ext1,
            other => return Err(Error::InvalidConfig(format!("unknown scheme '{other}'"))),
        })
    }
}

/// How the starting levels are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartMode {
    /// `U^1, Φ^1` from one implicit-explicit Euler step; higher levels (BDF3) by BDF2 steps.
    EulerStep,
    /// Interpolated exact solution at every starting level.
    Exact,
}

/// Target time step as a function of the mesh size `h = sqrt(2)/M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauRule {
    SqrtH,
    EqualH,
    Fixed(f64),
}

impl TauRule {
    pub fn target(self, h: f64) -> f64 {
        match self {
            TauRule::SqrtH => h.sqrt(),
            TauRule::EqualH => h,
            TauRule::Fixed(tau) => tau,
        }
    }

    pub fn tag(self) -> String {
        match self {
            TauRule::SqrtH => "sqrt-h".into(),
            TauRule::EqualH => "equal-h".into(),
            TauRule::Fixed(tau) => format!("fixed:{tau}"),
        }
    }
}

impl std::str::FromStr for TauRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt-h" => Ok(TauRule::SqrtH),
            "equal-h" => Ok(TauRule::EqualH),
            _ => {
                let v = s
                    .strip_prefix("fixed:")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown tau rule '{s}'")))?;
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::InvalidConfig(format!("time step must be positive, got {v}")));
                }
                Ok(TauRule::Fixed(v))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub scheme: SchemeKind,
    pub m: usize,
    pub elem: ElemKind,
    pub t_final: f64,
    pub tau_rule: TauRule,
    pub tol: f64,
    pub start: StartMode,
}

impl SchemeConfig {
    pub fn new(scheme: SchemeKind, m: usize, elem: ElemKind, tau_rule: TauRule) -> Self {
        SchemeConfig {
            scheme,
            m,
            elem,
            t_final: 1.0,
            tau_rule,
            tol: DEFAULT_TOL,
            start: scheme.default_start(),
        }
    }

    pub fn with_start(mut self, start: StartMode) -> Self {
        self.start = start;
        self
    }

    pub fn with_final_time(mut self, t_final: f64) -> Self {
        self.t_final = t_final;
        self
    }

    pub fn h(&self) -> f64 {
        std::f64::consts::SQRT_2 / self.m as f64
    }

    /// Number of steps `N = ceil(T / τ_target)` and realized step `τ = T / N`.
    pub fn time_grid(&self) -> (usize, f64) {
        let target = self.tau_rule.target(self.h());
        let ratio = self.t_final / target;
        // absorb roundoff so that e.g. T/τ = 10.000000000000002 gives 10 steps
        let n = ((ratio - 1e-9).ceil() as usize).max(1);
        (n, self.t_final / n as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 || self.m % 2 != 0 {
            return Err(Error::InvalidConfig(format!("M must be even and >= 2, got {}", self.m)));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidConfig(format!("final time must be positive, got {}", self.t_final)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("solver tolerance must be positive".into()));
        }
        if let TauRule::Fixed(tau) = self.tau_rule {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(Error::InvalidConfig(format!("time step must be positive, got {tau}")));
            }
        }
        let (n, _) = self.time_grid();
        if n < self.scheme.start_levels() {
            return Err(Error::InvalidConfig(format!(
                "{} needs at least {} steps, time grid has {n}",
                self.scheme.tag(),
                self.scheme.start_levels()
            )));
        }
        Ok(())
    }
}
