//! Error measurement: nodal interpolation, macroelement post-processing,
//! quadrature norms and empirical orders of convergence.

mod eoc;
mod norms;
mod postprocess;
mod report;

pub use eoc::eoc;
pub use norms::{h1_error, h1_error_postprocessed, h1_norm, h1_norm_postprocessed, h1_seminorm_error, l2_error};
pub use postprocess::{i2h_postprocess, PostProcessedField};
pub use report::{ErrorReport, FieldErrors};

use crate::fem::FeSpace;

/// Coefficients of `I_h f`: the values of `f` at the mesh nodes.
pub fn interpolate_nodal(space: &FeSpace, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    space.interpolate(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manufactured::{exact_fields, ManufacturedProblem};
    use crate::mesh::{build_mesh, macroelements, ElemKind};
    use crate::problem::ProblemData;

    fn slopes(es: &[f64]) -> Vec<f64> {
        let pts: Vec<_> = es.iter().enumerate().map(|(k, &e)| (1.0 / f64::from(8 << k), e)).collect();
        eoc(&pts).unwrap()
    }

    #[test]
    fn initial_temperature_vanishes_on_boundary() {
        let space = FeSpace::new(build_mesh(8, ElemKind::Quad).unwrap());
        let u0 = interpolate_nodal(&space, |x, y| exact_fields(x, y, 0.0).u);
        for &b in space.boundary_dofs() {
            assert!(u0[b].abs() < 1e-15);
        }
    }

    #[test]
    fn interpolation_error_is_second_order_in_l2() {
        let p = ManufacturedProblem;
        for kind in [ElemKind::Quad, ElemKind::Triangle] {
            let es: Vec<f64> = [8, 16, 32, 64]
                .iter()
                .map(|&m| {
                    let space = FeSpace::new(build_mesh(m, kind).unwrap());
                    let c = interpolate_nodal(&space, |x, y| p.exact_u(x, y, 1.0));
                    l2_error(&space, &c, |x, y| p.exact_u(x, y, 1.0))
                })
                .collect();
            for o in slopes(&es) {
                assert!((o - 2.0).abs() < 0.1, "{kind:?}: {o}");
            }
        }
    }

    #[test]
    fn postprocessing_of_interpolant_is_second_order_in_h1() {
        let p = ManufacturedProblem;
        let phi = |x: f64, y: f64| p.exact_phi(x, y, 1.0);
        let grad = |x: f64, y: f64| p.exact_phi_grad(x, y, 1.0);
        for kind in [ElemKind::Quad, ElemKind::Triangle] {
            let es: Vec<f64> = [8, 16, 32, 64]
                .iter()
                .map(|&m| {
                    let space = FeSpace::new(build_mesh(m, kind).unwrap());
                    let blocks = macroelements(space.mesh()).unwrap();
                    let field = i2h_postprocess(&space, &blocks, &interpolate_nodal(&space, phi));
                    h1_error_postprocessed(&space, &field, phi, grad)
                })
                .collect();
            for o in slopes(&es) {
                assert!((o - 2.0).abs() < 0.1, "{kind:?}: {o}");
            }
        }
    }
}
