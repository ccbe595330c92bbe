use super::{h1_error, h1_error_postprocessed, i2h_postprocess, interpolate_nodal, l2_error};
use crate::fem::FeSpace;
use crate::mesh::{macroelements, MacroBlock};
use crate::problem::ProblemData;
use crate::schemes::Simulation;

/// The four error quantities of one discrete field at the final time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldErrors {
    /// `‖U - u‖₀`
    pub l2: f64,
    /// `‖U - u‖₁`
    pub h1: f64,
    /// `‖U - I_h u‖₁`
    pub superclose_h1: f64,
    /// `‖I_2h U - u‖₁`
    pub superconv_h1: f64,
}

impl FieldErrors {
    pub fn measure(
        space: &FeSpace,
        blocks: &[MacroBlock],
        coeffs: &[f64],
        exact: impl Fn(f64, f64) -> f64 + Copy,
        exact_grad: impl Fn(f64, f64) -> [f64; 2] + Copy,
    ) -> Self {
        let interp = interpolate_nodal(space, exact);
        let diff: Vec<f64> = coeffs.iter().zip(&interp).map(|(a, b)| a - b).collect();
        let field = i2h_postprocess(space, blocks, coeffs);
        FieldErrors {
            l2: l2_error(space, coeffs, exact),
            h1: h1_error(space, coeffs, exact, exact_grad),
            superclose_h1: h1_error(space, &diff, |_, _| 0.0, |_, _| [0.0; 2]),
            superconv_h1: h1_error_postprocessed(space, &field, exact, exact_grad),
        }
    }
}

/// Errors of one run at the final time.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub scheme: String,
    pub elem: String,
    pub m: usize,
    /// Element diameter `sqrt(2)/M`.
    pub h: f64,
    pub tau: f64,
    pub steps: usize,
    pub u: FieldErrors,
    pub phi: FieldErrors,
    /// `(‖U - u‖₀² + ‖Φ - φ‖₀²)^{1/2}`
    pub combined_l2: f64,
}

impl ErrorReport {
    pub fn from_simulation(sim: &Simulation, problem: &dyn ProblemData) -> Self {
        let space = &sim.space;
        let blocks = macroelements(space.mesh()).expect("structured mesh has macroelements");
        let t = sim.state.t;
        let u = FieldErrors::measure(
            space,
            &blocks,
            sim.state.u_n(),
            |x, y| problem.exact_u(x, y, t),
            |x, y| problem.exact_u_grad(x, y, t),
        );
        let phi = FieldErrors::measure(
            space,
            &blocks,
            sim.state.phi_n(),
            |x, y| problem.exact_phi(x, y, t),
            |x, y| problem.exact_phi_grad(x, y, t),
        );
        ErrorReport {
            scheme: sim.config.scheme.tag().to_string(),
            elem: sim.config.elem.tag().to_string(),
            m: sim.config.m,
            h: sim.config.h(),
            tau: sim.tau,
            steps: sim.steps,
            combined_l2: u.l2.hypot(phi.l2),
            u,
            phi,
        }
    }

    /// Values in CSV column order, after the scheme and element tags.
    pub fn numeric_fields(&self) -> [f64; 9] {
        [
            self.u.l2,
            self.u.h1,
            self.u.superclose_h1,
            self.u.superconv_h1,
            self.phi.l2,
            self.phi.h1,
            self.phi.superclose_h1,
            self.phi.superconv_h1,
            self.combined_l2,
        ]
    }
}
