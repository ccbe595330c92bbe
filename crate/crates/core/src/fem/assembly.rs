//! Assembly of the bilinear forms and load vectors of the scheme.

use super::space::{ElementPoint, FeSpace};
use super::sparse::SparseOperator;
use crate::error::{Error, Result};

/// Smallest admissible conductivity value in a weighted stiffness operator.
pub const CONDUCTIVITY_GUARD: f64 = 1e-10;

/// A scalar coefficient sampled at every assembly quadrature point
/// (element-major, `points_per_element` values per element).
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffField {
    values: Vec<f64>,
    per_element: usize,
}

impl CoeffField {
    pub fn from_values(space: &FeSpace, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), space.num_elements() * space.points_per_element());
        CoeffField {
            values,
            per_element: space.points_per_element(),
        }
    }

    pub fn constant(space: &FeSpace, c: f64) -> Self {
        Self::from_values(space, vec![c; space.num_elements() * space.points_per_element()])
    }

    pub fn from_fn(space: &FeSpace, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = (0..space.num_elements())
            .flat_map(|e| space.element_points(e).iter().map(|p| f(p.x[0], p.x[1])))
            .collect();
        Self::from_values(space, values)
    }

    /// `s(U_h(x_q))` at every quadrature point of the FE function `coeffs`.
    pub fn compose(space: &FeSpace, coeffs: &[f64], s: impl Fn(f64) -> f64) -> Self {
        let values = space.values_at_points(coeffs).into_iter().map(s).collect();
        Self::from_values(space, values)
    }

    /// Pointwise linear combination `sum_k w_k c_k`.
    pub fn combine(terms: &[(f64, &CoeffField)]) -> Self {
        let (_, first) = terms[0];
        let mut values = vec![0.0; first.values.len()];
        for (w, field) in terms {
            assert_eq!(field.values.len(), values.len());
            for (acc, v) in values.iter_mut().zip(&field.values) {
                *acc += w * v;
            }
        }
        CoeffField {
            values,
            per_element: first.per_element,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn element(&self, e: usize) -> &[f64] {
        &self.values[e * self.per_element..(e + 1) * self.per_element]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Fails with [`Error::ConductivityNotPositive`] if any value is at or below the guard.
    pub fn check_positive(&self) -> Result<()> {
        let (mut min, mut at) = (f64::INFINITY, 0);
        for (k, &v) in self.values.iter().enumerate() {
            if v.is_nan() {
                return Err(Error::ConductivityNotPositive {
                    min: v,
                    element: k / self.per_element,
                });
            }
            if v < min {
                min = v;
                at = k;
            }
        }
        if min <= CONDUCTIVITY_GUARD {
            return Err(Error::ConductivityNotPositive {
                min,
                element: at / self.per_element,
            });
        }
        Ok(())
    }
}

/// Loops elements, building the local matrix with `local` and scattering it.
fn assemble_matrix(
    space: &FeSpace,
    mut local: impl FnMut(usize, &[ElementPoint], &mut [[f64; 4]; 4]),
) -> SparseOperator {
    let mesh = space.mesh();
    let nv = space.kind().vertices();
    let pattern = space.pattern();
    let mut op = SparseOperator::zeros(pattern.clone());
    let values = op.values_mut();
    for e in 0..mesh.num_elements() {
        let mut ke = [[0.0; 4]; 4];
        local(e, space.element_points(e), &mut ke);
        let verts = mesh.element(e);
        for a in 0..nv {
            for b in 0..nv {
                let k = pattern.position(verts[a], verts[b]).expect("element coupling in pattern");
                values[k] += ke[a][b];
            }
        }
    }
    op
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Consistent mass matrix `(phi_j, phi_i)`.
pub fn assemble_mass(space: &FeSpace) -> SparseOperator {
    let nv = space.kind().vertices();
    assemble_matrix(space, |_, pts, ke| {
        for p in pts {
            for a in 0..nv {
                for b in 0..nv {
                    ke[a][b] += p.jxw * p.n[a] * p.n[b];
                }
            }
        }
    })
}

/// Stiffness matrix `(grad phi_j, grad phi_i)`.
pub fn assemble_stiffness(space: &FeSpace) -> SparseOperator {
    let nv = space.kind().vertices();
    assemble_matrix(space, |_, pts, ke| {
        for p in pts {
            for a in 0..nv {
                for b in 0..nv {
                    ke[a][b] += p.jxw * dot(p.grad[a], p.grad[b]);
                }
            }
        }
    })
}

/// Stiffness matrix weighted by a positive coefficient, `(c grad phi_j, grad phi_i)`.
pub fn assemble_weighted_stiffness(space: &FeSpace, coeff: &CoeffField) -> Result<SparseOperator> {
    coeff.check_positive()?;
    let nv = space.kind().vertices();
    Ok(assemble_matrix(space, |e, pts, ke| {
        for (p, c) in pts.iter().zip(coeff.element(e)) {
            let w = p.jxw * c;
            for a in 0..nv {
                for b in 0..nv {
                    ke[a][b] += w * dot(p.grad[a], p.grad[b]);
                }
            }
        }
    }))
}

fn assemble_vector(space: &FeSpace, mut integrand: impl FnMut(usize, usize, &ElementPoint) -> f64) -> Vec<f64> {
    let mesh = space.mesh();
    let nv = space.kind().vertices();
    let mut out = vec![0.0; space.ndofs()];
    for e in 0..mesh.num_elements() {
        let verts = mesh.element(e);
        for (q, p) in space.element_points(e).iter().enumerate() {
            let w = p.jxw * integrand(e, q, p);
            for a in 0..nv {
                out[verts[a]] += w * p.n[a];
            }
        }
    }
    out
}

/// Load vector `(f, phi_i)`.
pub fn assemble_load(space: &FeSpace, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    assemble_vector(space, |_, _, p| f(p.x[0], p.x[1]))
}

/// Joule heating load `(c |grad Phi_h|^2, phi_i)`.
pub fn assemble_joule_load(space: &FeSpace, coeff: &CoeffField, phi: &[f64]) -> Vec<f64> {
    assert_eq!(phi.len(), space.ndofs());
    let mesh = space.mesh();
    let nv = space.kind().vertices();
    assemble_vector(space, |e, q, p| {
        let verts = mesh.element(e);
        let mut g = [0.0; 2];
        for a in 0..nv {
            g[0] += p.grad[a][0] * phi[verts[a]];
            g[1] += p.grad[a][1] * phi[verts[a]];
        }
        coeff.element(e)[q] * dot(g, g)
    })
}
