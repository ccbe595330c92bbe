use std::io::Write;

use super::bdf::{BdfWeights, BDF2, BDF3, EULER};
use super::solves::{heat_operator, potential_solve, temperature_load, temperature_solve, TemperatureRhs};
use super::{SchemeConfig, SchemeKind, StartMode, TimeState};
use crate::error::{Error, Result};
use crate::fem::dirichlet::reassemble;
use crate::fem::{
    assemble_joule_load, assemble_load, assemble_mass, assemble_stiffness, BandedCholesky, CoeffField, FeSpace, SolveStats,
    SparseOperator,
};
use crate::mesh::build_mesh;
use crate::problem::ProblemData;

/// Diagnostics of one time step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub n: usize,
    pub t: f64,
    pub potential_iterations: usize,
    pub potential_residual: f64,
    pub temperature_iterations: usize,
    pub temperature_residual: f64,
    /// Minimum of the coefficient used in the potential solve.
    pub min_sigma_star: f64,
}

impl StepRecord {
    pub const CSV_HEADER: &'static str =
        "n,t,potential_iterations,potential_residual,temperature_iterations,temperature_residual,min_sigma_star";

    pub fn write_csv<W: Write>(records: &[StepRecord], mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for r in records {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.n,
                r.t,
                r.potential_iterations,
                r.potential_residual,
                r.temperature_iterations,
                r.temperature_residual,
                r.min_sigma_star
            )?;
        }
        Ok(())
    }
}

/// Advances a [`TimeState`] on a fixed space with a fixed step size.
///
/// Mass and stiffness matrices are assembled once; the reduced heat operator
/// is cached per BDF order and factored on its second use.
pub struct Integrator<'a> {
    space: &'a FeSpace,
    problem: &'a dyn ProblemData,
    mass: SparseOperator,
    stiffness: SparseOperator,
    tau: f64,
    tol: f64,
    heat_ops: Vec<HeatOp>,
}

/// Linear extrapolation of the stored potentials, or the newest one.
fn potential_guess(state: &TimeState) -> Option<Vec<f64>> {
    match (state.phi(0), state.phi(1)) {
        (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| 2.0 * x - y).collect()),
        (a, _) => a.map(<[f64]>::to_vec),
    }
}

struct HeatOp {
    lead: f64,
    op: SparseOperator,
    uses: usize,
    factor: Option<BandedCholesky>,
}

impl<'a> Integrator<'a> {
    pub fn new(space: &'a FeSpace, problem: &'a dyn ProblemData, tau: f64, tol: f64) -> Self {
        assert!(tau > 0.0);
        Integrator {
            space,
            problem,
            mass: assemble_mass(space),
            stiffness: assemble_stiffness(space),
            tau,
            tol,
            heat_ops: Vec::new(),
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn mass(&self) -> &SparseOperator {
        &self.mass
    }

    pub fn stiffness(&self) -> &SparseOperator {
        &self.stiffness
    }

    /// `U^0 = I_h u^0`, with boundary dofs pinned to zero.
    pub fn initial_state(&self) -> TimeState {
        let p = self.problem;
        TimeState::new(self.interpolate_temperature(|x, y| p.u0(x, y)))
    }

    // sin(πx) is not exactly zero at x = 1 in floating point
    fn interpolate_temperature(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut u = self.space.interpolate(f);
        for &b in self.space.boundary_dofs() {
            u[b] = 0.0;
        }
        u
    }

    /// `σ(U_h(x_q))` at every assembly quadrature point.
    pub fn sigma_field(&self, u: &[f64]) -> CoeffField {
        let p = self.problem;
        CoeffField::compose(self.space, u, |s| p.sigma(s))
    }

    fn heat_op(&mut self, lead: f64) -> usize {
        if let Some(k) = self.heat_ops.iter().position(|h| h.lead == lead) {
            return k;
        }
        let op = heat_operator(self.space, &self.mass, &self.stiffness, lead, self.tau);
        self.heat_ops.push(HeatOp {
            lead,
            op,
            uses: 0,
            factor: None,
        });
        self.heat_ops.len() - 1
    }

    fn solve_potential(&self, coeff: &CoeffField, t: f64, guess: Option<&[f64]>) -> Result<(Vec<f64>, SolveStats)> {
        let p = self.problem;
        potential_solve(self.space, coeff, |x, y| p.g(x, y, t), |x, y| p.f2(x, y, t), guess, self.tol)
    }

    /// Potential at the current level with the conductivity of the current
    /// temperature, stored as the newest potential level.
    pub fn initial_potential(&self, state: &mut TimeState) -> Result<()> {
        let coeff = self.sigma_field(state.u_n());
        let (phi, _) = self.solve_potential(&coeff, state.t, None)?;
        state.push_phi(phi);
        Ok(())
    }

    /// Temperature update with the given backward difference; `joule` is the
    /// full Joule heating load at the new level.
    fn solve_temperature(
        &mut self,
        state: &TimeState,
        weights: BdfWeights,
        joule: &[f64],
        t_new: f64,
    ) -> Result<(Vec<f64>, SolveStats)> {
        let ndofs = self.space.ndofs();
        let mut history = vec![0.0; ndofs];
        for (k, w) in weights.history.iter().enumerate() {
            for (h, u) in history.iter_mut().zip(state.u(k)) {
                *h += w * u / self.tau;
            }
        }
        let p = self.problem;
        let source = assemble_load(self.space, |x, y| p.f1(x, y, t_new));
        let guess: Vec<f64> = if state.u_levels() >= 2 {
            state.u_n().iter().zip(state.u_nm1()).map(|(a, b)| 2.0 * a - b).collect()
        } else {
            state.u_n().to_vec()
        };
        let k = self.heat_op(weights.lead);
        let rhs = TemperatureRhs {
            history,
            joule,
            source: &source,
        };
        let heat = &mut self.heat_ops[k];
        heat.uses += 1;
        if heat.uses == 2 {
            heat.factor = Some(BandedCholesky::factor(&heat.op)?);
        }
        match &heat.factor {
            None => temperature_solve(self.space, &self.mass, &heat.op, rhs, &guess, self.tol),
            Some(chol) => {
                let b = temperature_load(self.space, &self.mass, &rhs);
                let residual = |x: &[f64]| -> Vec<f64> { heat.op.matvec(x).iter().zip(&b).map(|(a, c)| c - a).collect() };
                // one step of iterative refinement
                let mut x = chol.solve(&b);
                let dx = chol.solve(&residual(&x));
                for (xi, d) in x.iter_mut().zip(dx) {
                    *xi += d;
                }
                let res = residual(&x).iter().map(|v| v * v).sum::<f64>().sqrt();
                let bn = b.iter().map(|v| v * v).sum::<f64>().sqrt();
                let stats = SolveStats {
                    iterations: 0,
                    residual: if bn > 0.0 { res / bn } else { 0.0 },
                };
                Ok((reassemble(self.space, vec![0.0; self.space.ndofs()], &x), stats))
            }
        }
    }

    /// Potential first with `sigma_star`, then temperature with Joule load
    /// `sigma_star |∇Φ^n|²`.
    fn imex_step(&mut self, state: &mut TimeState, weights: BdfWeights, sigma_star: CoeffField) -> Result<StepRecord> {
        assert!(state.u_levels() >= weights.history.len());
        let t_new = (state.n + 1) as f64 * self.tau;
        let min_sigma_star = sigma_star.min();
        let guess = potential_guess(state);
        let (phi, pstats) = self.solve_potential(&sigma_star, t_new, guess.as_deref())?;
        let joule = assemble_joule_load(self.space, &sigma_star, &phi);
        let (u, tstats) = self.solve_temperature(state, weights, &joule, t_new)?;
        state.push_u(u, self.tau);
        state.push_phi(phi);
        self.debug_check_boundary(state);
        Ok(StepRecord {
            n: state.n,
            t: state.t,
            potential_iterations: pstats.iterations,
            potential_residual: pstats.residual,
            temperature_iterations: tstats.iterations,
            temperature_residual: tstats.residual,
            min_sigma_star,
        })
    }

    /// One implicit-explicit Euler step with conductivity `σ(U^{n-1})`
    /// (used as the starting step of the BDF schemes).
    pub fn euler_step(&mut self, state: &mut TimeState) -> Result<StepRecord> {
        let coeff = self.sigma_field(state.u_n());
        self.imex_step(state, EULER, coeff)
    }

    /// Second-order scheme with `σ* = 2σ(U^{n-1}) - σ(U^{n-2})`.
    pub fn bdf2_step(&mut self, state: &mut TimeState) -> Result<StepRecord> {
        let s1 = self.sigma_field(state.u(0));
        let s2 = self.sigma_field(state.u(1));
        let star = CoeffField::combine(&[(2.0, &s1), (-1.0, &s2)]);
        self.imex_step(state, BDF2, star)
    }

    /// Third-order scheme with `σ* = 3σ(U^{n-1}) - 3σ(U^{n-2}) + σ(U^{n-3})`.
    pub fn bdf3_step(&mut self, state: &mut TimeState) -> Result<StepRecord> {
        let s1 = self.sigma_field(state.u(0));
        let s2 = self.sigma_field(state.u(1));
        let s3 = self.sigma_field(state.u(2));
        let star = CoeffField::combine(&[(3.0, &s1), (-3.0, &s2), (1.0, &s3)]);
        self.imex_step(state, BDF3, star)
    }

    /// BDF2 with first-order extrapolation `σ(U^{n-1})` in both equations.
    pub fn ext1_step(&mut self, state: &mut TimeState) -> Result<StepRecord> {
        let coeff = self.sigma_field(state.u(0));
        self.imex_step(state, BDF2, coeff)
    }

    /// BDF2 with the Joule term extrapolated as
    /// `2σ(U^{n-1})|∇Φ^{n-1}|² - σ(U^{n-2})|∇Φ^{n-2}|²`; the temperature is
    /// solved first, then the potential with `σ(U^n)`.
    pub fn gao_step(&mut self, state: &mut TimeState) -> Result<StepRecord> {
        let (phi_nm1, phi_nm2) = match (state.phi(0), state.phi(1)) {
            (Some(a), Some(b)) => (a.to_vec(), b.to_vec()),
            _ => panic!("gao step needs two potential levels"),
        };
        let t_new = (state.n + 1) as f64 * self.tau;
        let s1 = self.sigma_field(state.u(0));
        let s2 = self.sigma_field(state.u(1));
        let j1 = assemble_joule_load(self.space, &s1, &phi_nm1);
        let j2 = assemble_joule_load(self.space, &s2, &phi_nm2);
        let joule: Vec<f64> = j1.iter().zip(&j2).map(|(a, b)| 2.0 * a - b).collect();
        let (u, tstats) = self.solve_temperature(state, BDF2, &joule, t_new)?;
        let coeff = self.sigma_field(&u);
        let min_sigma_star = coeff.min();
        let guess = potential_guess(state);
        let (phi, pstats) = self.solve_potential(&coeff, t_new, guess.as_deref())?;
        state.push_u(u, self.tau);
        state.push_phi(phi);
        self.debug_check_boundary(state);
        Ok(StepRecord {
            n: state.n,
            t: state.t,
            potential_iterations: pstats.iterations,
            potential_residual: pstats.residual,
            temperature_iterations: tstats.iterations,
            temperature_residual: tstats.residual,
            min_sigma_star,
        })
    }

    pub fn step(&mut self, scheme: SchemeKind, state: &mut TimeState) -> Result<StepRecord> {
        match scheme {
            SchemeKind::Euler => self.euler_step(state),
            SchemeKind::Bdf2 => self.bdf2_step(state),
            SchemeKind::Bdf3 => self.bdf3_step(state),
            SchemeKind::Gao => self.gao_step(state),
            SchemeKind::Ext1 => self.ext1_step(state),
        }
    }

    /// Appends the interpolated exact solution as the next level.
    pub fn exact_level(&self, state: &mut TimeState) {
        let t = (state.n + 1) as f64 * self.tau;
        let p = self.problem;
        state.push_u(self.interpolate_temperature(|x, y| p.exact_u(x, y, t)), self.tau);
        state.push_phi(self.space.interpolate(|x, y| p.exact_phi(x, y, t)));
    }

    /// Temperature vanishes on the boundary; the newest potential matches `I_h g`.
    pub fn check_boundary(&self, state: &TimeState) -> bool {
        let p = self.problem;
        let nodes = self.space.mesh().nodes();
        let u_ok = self
            .space
            .boundary_dofs()
            .iter()
            .all(|&b| (0..state.u_levels()).all(|lag| state.u(lag)[b] == 0.0));
        let phi_ok = state.phi(0).map_or(true, |phi| {
            self.space
                .boundary_dofs()
                .iter()
                .all(|&b| (phi[b] - p.g(nodes[b][0], nodes[b][1], state.t)).abs() <= 1e-12)
        });
        u_ok && phi_ok
    }

    fn debug_check_boundary(&self, state: &TimeState) {
        debug_assert!(self.check_boundary(state), "boundary invariant violated at step {}", state.n);
    }
}

/// Result of a full run.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub config: SchemeConfig,
    pub space: FeSpace,
    pub state: TimeState,
    pub trace: Vec<StepRecord>,
    pub steps: usize,
    pub tau: f64,
}

/// Runs `config` on an existing space: starting levels, then the scheme's
/// steps up to `t = T`.
pub fn run_on_space(space: &FeSpace, config: &SchemeConfig, problem: &dyn ProblemData) -> Result<(TimeState, Vec<StepRecord>)> {
    config.validate()?;
    let (steps, tau) = config.time_grid();
    let mut integ = Integrator::new(space, problem, tau, config.tol);
    let mut state = integ.initial_state();
    let mut trace = Vec::with_capacity(steps);
    let start_levels = config.scheme.start_levels();

    match config.start {
        StartMode::Exact => {
            let p = problem;
            state.push_phi(space.interpolate(|x, y| p.exact_phi(x, y, 0.0)));
            while state.n + 1 < start_levels {
                integ.exact_level(&mut state);
            }
        }
        StartMode::EulerStep => {
            integ.initial_potential(&mut state).map_err(|e| e.at_step(0))?;
            if start_levels >= 2 {
                trace.push(integ.euler_step(&mut state).map_err(|e| e.at_step(1))?);
            }
            // BDF3 needs a third level; fill it with one BDF2 step.
            while state.n + 1 < start_levels {
                let n = state.n + 1;
                trace.push(integ.bdf2_step(&mut state).map_err(|e| e.at_step(n))?);
            }
        }
    }

    while state.n < steps {
        let n = state.n + 1;
        trace.push(integ.step(config.scheme, &mut state).map_err(|e| e.at_step(n))?);
    }
    Ok((state, trace))
}

pub fn run_simulation(config: &SchemeConfig, problem: &dyn ProblemData) -> Result<Simulation> {
    config.validate()?;
    let mesh = build_mesh(config.m, config.elem).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let space = FeSpace::new(mesh);
    let (state, trace) = run_on_space(&space, config, problem)?;
    let (steps, tau) = config.time_grid();
    Ok(Simulation {
        config: config.clone(),
        space,
        state,
        trace,
        steps,
        tau,
    })
}
