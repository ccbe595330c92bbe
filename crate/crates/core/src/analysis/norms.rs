//! Element-wise quadrature error norms, integrated with the error-norm rule.

use super::postprocess::PostProcessedField;
use crate::fem::space::ElementPoint;
use crate::fem::FeSpace;

/// Squared L² and H¹-seminorm contributions of `approx - exact`.
fn squared_errors(
    space: &FeSpace,
    approx: impl Fn(usize, &ElementPoint) -> (f64, [f64; 2]),
    exact: impl Fn(f64, f64) -> f64,
    exact_grad: impl Fn(f64, f64) -> [f64; 2],
) -> (f64, f64) {
    let rule = space.error_rule();
    let mut l2 = 0.0;
    let mut semi = 0.0;
    for e in 0..space.num_elements() {
        for p in space.points_for_rule(e, rule) {
            let (v, g) = approx(e, &p);
            let [x, y] = p.x;
            let ge = exact_grad(x, y);
            let d = v - exact(x, y);
            l2 += p.jxw * d * d;
            semi += p.jxw * ((g[0] - ge[0]).powi(2) + (g[1] - ge[1]).powi(2));
        }
    }
    (l2, semi)
}

fn fe_eval<'a>(space: &'a FeSpace, coeffs: &'a [f64]) -> impl Fn(usize, &ElementPoint) -> (f64, [f64; 2]) + 'a {
    move |e, p| {
        let mut v = 0.0;
        let mut g = [0.0; 2];
        for (a, &node) in space.mesh().element(e).iter().enumerate() {
            let c = coeffs[node];
            v += c * p.n[a];
            g[0] += c * p.grad[a][0];
            g[1] += c * p.grad[a][1];
        }
        (v, g)
    }
}

/// `‖u_h - u‖₀`.
pub fn l2_error(space: &FeSpace, coeffs: &[f64], exact: impl Fn(f64, f64) -> f64) -> f64 {
    squared_errors(space, fe_eval(space, coeffs), exact, |_, _| [0.0; 2]).0.sqrt()
}

/// Full norm `‖u_h - u‖₁ = (‖·‖₀² + |·|₁²)^{1/2}`.
pub fn h1_error(
    space: &FeSpace,
    coeffs: &[f64],
    exact: impl Fn(f64, f64) -> f64,
    exact_grad: impl Fn(f64, f64) -> [f64; 2],
) -> f64 {
    let (a, b) = squared_errors(space, fe_eval(space, coeffs), exact, exact_grad);
    (a + b).sqrt()
}

/// `|u_h - u|₁` alone.
pub fn h1_seminorm_error(
    space: &FeSpace,
    coeffs: &[f64],
    exact: impl Fn(f64, f64) -> f64,
    exact_grad: impl Fn(f64, f64) -> [f64; 2],
) -> f64 {
    squared_errors(space, fe_eval(space, coeffs), exact, exact_grad).1.sqrt()
}

/// `‖I_2h u_h - u‖₁`, block polynomials evaluated on the fine quadrature.
pub fn h1_error_postprocessed(
    space: &FeSpace,
    field: &PostProcessedField,
    exact: impl Fn(f64, f64) -> f64,
    exact_grad: impl Fn(f64, f64) -> [f64; 2],
) -> f64 {
    let (a, b) = squared_errors(space, |e, p| field.eval_in_element(e, p.x[0], p.x[1]), exact, exact_grad);
    (a + b).sqrt()
}

/// `‖u_h‖₁` of an FE function.
pub fn h1_norm(space: &FeSpace, coeffs: &[f64]) -> f64 {
    h1_error(space, coeffs, |_, _| 0.0, |_, _| [0.0; 2])
}

/// `‖I_2h u_h‖₁`.
pub fn h1_norm_postprocessed(space: &FeSpace, field: &PostProcessedField) -> f64 {
    h1_error_postprocessed(space, field, |_, _| 0.0, |_, _| [0.0; 2])
}
