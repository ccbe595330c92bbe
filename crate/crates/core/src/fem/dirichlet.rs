//! Dirichlet conditions by elimination of the boundary dofs.

use super::space::FeSpace;
use super::sparse::SparseOperator;

/// Interior system `A_II x_I = b_I - A_IB g_B`.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    pub matrix: SparseOperator,
    pub rhs: Vec<f64>,
}

/// Eliminates the boundary dofs of `a x = b` given boundary values in
/// [`FeSpace::boundary_dofs`] order. Returns the reduced system and the lift:
/// a full-length vector holding the boundary values and zeros elsewhere.
pub fn apply_dirichlet(
    space: &FeSpace,
    a: &SparseOperator,
    b: &[f64],
    boundary_values: &[f64],
) -> (ReducedSystem, Vec<f64>) {
    assert_eq!(a.n(), space.ndofs());
    assert_eq!(b.len(), space.ndofs());
    assert_eq!(boundary_values.len(), space.boundary_dofs().len());

    let mut lift = vec![0.0; space.ndofs()];
    for (&node, &g) in space.boundary_dofs().iter().zip(boundary_values) {
        lift[node] = g;
    }

    let full = a.pattern();
    let reduced_pattern = space.interior_pattern().clone();
    let mut matrix = SparseOperator::zeros(reduced_pattern.clone());
    let interior = space.interior_dofs();
    let mut rhs = Vec::with_capacity(interior.len());
    {
        let values = matrix.values_mut();
        let src = a.values();
        for (r, &i) in interior.iter().enumerate() {
            let mut bi = b[i];
            let mut slot = reduced_pattern.row_range(r);
            for (k, &j) in full.row_range(i).zip(full.row(i)) {
                if space.mesh().is_boundary(j) {
                    bi -= src[k] * lift[j];
                } else {
                    let dst = slot.next().expect("interior pattern matches full pattern");
                    values[dst] = src[k];
                }
            }
            rhs.push(bi);
        }
    }
    (ReducedSystem { matrix, rhs }, lift)
}

/// Writes interior solution values into the lift, giving the full vector.
pub fn reassemble(space: &FeSpace, mut lift: Vec<f64>, interior_values: &[f64]) -> Vec<f64> {
    assert_eq!(interior_values.len(), space.interior_dofs().len());
    for (&node, &v) in space.interior_dofs().iter().zip(interior_values) {
        lift[node] = v;
    }
    lift
}

/// Interior entries of a full-length vector.
pub fn restrict_interior(space: &FeSpace, full: &[f64]) -> Vec<f64> {
    space.interior_dofs().iter().map(|&n| full[n]).collect()
}
