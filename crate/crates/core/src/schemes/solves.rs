//! The two linear solves of one time step.

use crate::error::Result;
use crate::fem::dirichlet::{apply_dirichlet, reassemble, restrict_interior};
use crate::fem::{
    assemble_joule_load, assemble_load, assemble_weighted_stiffness, solve_spd_from, CoeffField, FeSpace, SolveStats,
    SparseOperator,
};

/// Potential update: weighted stiffness with coefficient `sigma_star`,
/// boundary values `I_h g`, load `(f2, ξ)`.
///
/// `guess` (full-length) seeds CG; pass `None` to start from zero.
pub fn potential_solve(
    space: &FeSpace,
    sigma_star: &CoeffField,
    g_at_t: impl Fn(f64, f64) -> f64,
    f2_at_t: impl Fn(f64, f64) -> f64,
    guess: Option<&[f64]>,
    tol: f64,
) -> Result<(Vec<f64>, SolveStats)> {
    let a = assemble_weighted_stiffness(space, sigma_star)?;
    let b = assemble_load(space, f2_at_t);
    let g = space.boundary_values(g_at_t);
    let (sys, lift) = apply_dirichlet(space, &a, &b, &g);
    let mut x = match guess {
        Some(v) => restrict_interior(space, v),
        None => vec![0.0; sys.rhs.len()],
    };
    let stats = solve_spd_from(&sys.matrix, &sys.rhs, &mut x, tol)?;
    Ok((reassemble(space, lift, &x), stats))
}

/// Heat operator `(lead/τ) M + K` restricted to the interior dofs.
pub fn heat_operator(space: &FeSpace, mass: &SparseOperator, stiffness: &SparseOperator, lead: f64, tau: f64) -> SparseOperator {
    let a = SparseOperator::lin_comb(lead / tau, mass, 1.0, stiffness);
    let zeros = vec![0.0; space.boundary_dofs().len()];
    apply_dirichlet(space, &a, &vec![0.0; space.ndofs()], &zeros).0.matrix
}

/// Right-hand side pieces of a temperature update.
pub struct TemperatureRhs<'a> {
    /// `sum_k w_k U^{n-1-k} / τ`, multiplied by the mass matrix inside.
    pub history: Vec<f64>,
    /// Joule heating load vector (full length).
    pub joule: &'a [f64],
    /// `(f1(t^n), ξ)` (full length).
    pub source: &'a [f64],
}

/// Interior part of `M history + joule + source`.
pub fn temperature_load(space: &FeSpace, mass: &SparseOperator, rhs: &TemperatureRhs<'_>) -> Vec<f64> {
    let mh = mass.matvec(&rhs.history);
    let full: Vec<f64> = mh
        .iter()
        .zip(rhs.joule)
        .zip(rhs.source)
        .map(|((a, b), c)| a + b + c)
        .collect();
    restrict_interior(space, &full)
}

/// Solves `heat_op U_I = (M history + joule + source)_I` with homogeneous
/// boundary values.
pub fn temperature_solve(
    space: &FeSpace,
    mass: &SparseOperator,
    heat_op: &SparseOperator,
    rhs: TemperatureRhs<'_>,
    guess: &[f64],
    tol: f64,
) -> Result<(Vec<f64>, SolveStats)> {
    let b = temperature_load(space, mass, &rhs);
    let mut x = restrict_interior(space, guess);
    let stats = solve_spd_from(heat_op, &b, &mut x, tol)?;
    Ok((reassemble(space, vec![0.0; space.ndofs()], &x), stats))
}

/// BDF2 temperature update: `(D_τ U^n, ξ) + (∇U^n, ∇ξ) = (σ*|∇Φ^n|², ξ) + (f1(t^n), ξ)`.
#[allow(clippy::too_many_arguments)]
pub fn temperature_solve_bdf2(
    space: &FeSpace,
    mass: &SparseOperator,
    stiffness: &SparseOperator,
    u_nm1: &[f64],
    u_nm2: &[f64],
    phi_n: &[f64],
    sigma_star: &CoeffField,
    f1_at_tn: impl Fn(f64, f64) -> f64,
    tau: f64,
    tol: f64,
) -> Result<Vec<f64>> {
    let heat_op = heat_operator(space, mass, stiffness, 1.5, tau);
    let history: Vec<f64> = u_nm1.iter().zip(u_nm2).map(|(a, b)| (2.0 * a - 0.5 * b) / tau).collect();
    let joule = assemble_joule_load(space, sigma_star, phi_n);
    let source = assemble_load(space, f1_at_tn);
    let guess: Vec<f64> = u_nm1.iter().zip(u_nm2).map(|(a, b)| 2.0 * a - b).collect();
    let rhs = TemperatureRhs {
        history,
        joule: &joule,
        source: &source,
    };
    Ok(temperature_solve(space, mass, &heat_op, rhs, &guess, tol)?.0)
}
