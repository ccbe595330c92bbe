//! Nodal (bi)linear finite element space on a [`Mesh`].

use std::sync::Arc;

use super::quadrature::QuadRule;
use super::sparse::Pattern;
use crate::mesh::{ElemKind, Mesh};

/// Shape function values and physical gradients at one quadrature point.
#[derive(Debug, Clone, Copy)]
pub struct ElementPoint {
    /// Physical coordinates.
    pub x: [f64; 2],
    /// Quadrature weight times `|det J|`.
    pub jxw: f64,
    pub n: [f64; 4],
    pub grad: [[f64; 2]; 4],
}

/// Reference shape functions and their reference derivatives.
pub fn reference_shape(kind: ElemKind, xi: [f64; 2]) -> ([f64; 4], [[f64; 2]; 4]) {
    match kind {
        ElemKind::Triangle => {
            let [r, s] = xi;
            (
                [1.0 - r - s, r, s, 0.0],
                [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]],
            )
        }
        ElemKind::Quad => {
            let [r, s] = xi;
            let corners = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
            let mut n = [0.0; 4];
            let mut d = [[0.0; 2]; 4];
            for (a, c) in corners.iter().enumerate() {
                n[a] = 0.25 * (1.0 + c[0] * r) * (1.0 + c[1] * s);
                d[a] = [0.25 * c[0] * (1.0 + c[1] * s), 0.25 * c[1] * (1.0 + c[0] * r)];
            }
            (n, d)
        }
    }
}

/// Maps reference shape data through the element geometry.
pub fn map_point(kind: ElemKind, verts: &[[f64; 2]], xi: [f64; 2], weight: f64) -> ElementPoint {
    let nv = kind.vertices();
    let (n, dref) = reference_shape(kind, xi);
    let mut x = [0.0; 2];
    let mut jac = [[0.0; 2]; 2];
    for a in 0..nv {
        for r in 0..2 {
            x[r] += n[a] * verts[a][r];
            for c in 0..2 {
                jac[r][c] += verts[a][r] * dref[a][c];
            }
        }
    }
    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    // grad N = J^{-T} dN
    let inv_t = [
        [jac[1][1] / det, -jac[1][0] / det],
        [-jac[0][1] / det, jac[0][0] / det],
    ];
    let mut grad = [[0.0; 2]; 4];
    for a in 0..nv {
        grad[a] = [
            inv_t[0][0] * dref[a][0] + inv_t[0][1] * dref[a][1],
            inv_t[1][0] * dref[a][0] + inv_t[1][1] * dref[a][1],
        ];
    }
    ElementPoint {
        x,
        jxw: weight * det.abs(),
        n,
        grad,
    }
}

/// Nodal space `V_h` with one dof per mesh node.
#[derive(Debug, Clone)]
pub struct FeSpace {
    mesh: Mesh,
    interior: Vec<usize>,
    boundary: Vec<usize>,
    assembly_rule: QuadRule,
    error_rule: QuadRule,
    points: Vec<ElementPoint>,
    pattern: Arc<Pattern>,
    interior_pattern: Arc<Pattern>,
}

impl FeSpace {
    pub fn new(mesh: Mesh) -> Self {
        let kind = mesh.kind();
        let assembly_rule = QuadRule::assembly(kind);
        let error_rule = QuadRule::error_norm(kind);
        let interior = mesh.interior_nodes();
        let boundary = mesh.boundary_nodes();
        let mut points = Vec::with_capacity(mesh.num_elements() * assembly_rule.len());
        for e in 0..mesh.num_elements() {
            let verts = mesh.vertex_coords(e);
            points.extend(assembly_rule.iter().map(|(xi, w)| map_point(kind, &verts, xi, w)));
        }

        let pattern = Arc::new(Pattern::from_elements(mesh.num_nodes(), mesh.elements()));
        let interior_pattern = Arc::new(pattern.restrict(&interior, mesh.num_nodes()));

        FeSpace {
            mesh,
            interior,
            boundary,
            assembly_rule,
            error_rule,
            points,
            pattern,
            interior_pattern,
        }
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn kind(&self) -> ElemKind {
        self.mesh.kind()
    }

    pub fn ndofs(&self) -> usize {
        self.mesh.num_nodes()
    }

    pub fn num_elements(&self) -> usize {
        self.mesh.num_elements()
    }

    pub fn interior_dofs(&self) -> &[usize] {
        &self.interior
    }

    pub fn boundary_dofs(&self) -> &[usize] {
        &self.boundary
    }

    pub fn assembly_rule(&self) -> &QuadRule {
        &self.assembly_rule
    }

    pub fn error_rule(&self) -> &QuadRule {
        &self.error_rule
    }

    pub fn points_per_element(&self) -> usize {
        self.assembly_rule.len()
    }

    /// Cached assembly-rule data of element `e`.
    pub fn element_points(&self, e: usize) -> &[ElementPoint] {
        let nq = self.points_per_element();
        &self.points[e * nq..(e + 1) * nq]
    }

    /// Shape data of element `e` at the points of an arbitrary rule.
    pub fn points_for_rule(&self, e: usize, rule: &QuadRule) -> Vec<ElementPoint> {
        let verts = self.mesh.vertex_coords(e);
        rule.iter().map(|(xi, w)| map_point(self.kind(), &verts, xi, w)).collect()
    }

    pub(crate) fn pattern(&self) -> &Arc<Pattern> {
        &self.pattern
    }

    pub(crate) fn interior_pattern(&self) -> &Arc<Pattern> {
        &self.interior_pattern
    }

    /// FE function values at every assembly quadrature point, element-major.
    pub fn values_at_points(&self, coeffs: &[f64]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.ndofs());
        let nv = self.kind().vertices();
        let nq = self.points_per_element();
        let mut out = Vec::with_capacity(self.num_elements() * nq);
        for e in 0..self.num_elements() {
            let verts = self.mesh.element(e);
            for p in self.element_points(e) {
                out.push((0..nv).map(|a| p.n[a] * coeffs[verts[a]]).sum());
            }
        }
        out
    }

    /// Values of `f` at the nodes (the coefficients of `I_h f`).
    pub fn interpolate(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        self.mesh.nodes().iter().map(|p| f(p[0], p[1])).collect()
    }

    /// Values of `g` at the boundary dofs, in [`boundary_dofs`](Self::boundary_dofs) order.
    pub fn boundary_values(&self, g: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let nodes = self.mesh.nodes();
        self.boundary.iter().map(|&n| g(nodes[n][0], nodes[n][1])).collect()
    }
}
