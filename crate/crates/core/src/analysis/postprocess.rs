//! Macroelement interpolation `I_2h`: a biquadratic (quads) or quadratic
//! (triangles) polynomial per macroelement, matching the nodal values at the
//! anchor nodes.

use nalgebra::{DMatrix, DVector};

use crate::fem::FeSpace;
use crate::mesh::{MacroBlock, MacroSpace};

/// Monomial exponents of the local spaces.
const Q2_EXPONENTS: [(i32, i32); 9] = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (2, 2)];
const P2_EXPONENTS: [(i32, i32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

fn exponents(space: MacroSpace) -> &'static [(i32, i32)] {
    match space {
        MacroSpace::Q2 => &Q2_EXPONENTS,
        MacroSpace::P2 => &P2_EXPONENTS,
    }
}

/// One block polynomial in monomials of `((x - cx)/s, (y - cy)/s)`.
#[derive(Debug, Clone)]
struct BlockPoly {
    center: [f64; 2],
    scale: f64,
    space: MacroSpace,
    coeffs: Vec<f64>,
}

impl BlockPoly {
    fn local(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.center[0]) / self.scale, (y - self.center[1]) / self.scale)
    }

    fn eval(&self, x: f64, y: f64) -> (f64, [f64; 2]) {
        let (xi, eta) = self.local(x, y);
        let mut v = 0.0;
        let mut g = [0.0; 2];
        for (&(i, j), c) in exponents(self.space).iter().zip(&self.coeffs) {
            v += c * xi.powi(i) * eta.powi(j);
            if i > 0 {
                g[0] += c * f64::from(i) * xi.powi(i - 1) * eta.powi(j);
            }
            if j > 0 {
                g[1] += c * f64::from(j) * xi.powi(i) * eta.powi(j - 1);
            }
        }
        (v, [g[0] / self.scale, g[1] / self.scale])
    }
}

/// Piecewise polynomial on the macroelement (2h) mesh.
#[derive(Debug, Clone)]
pub struct PostProcessedField {
    blocks: Vec<BlockPoly>,
    /// Block index of every fine element.
    element_block: Vec<usize>,
}

impl PostProcessedField {
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of_element(&self, e: usize) -> usize {
        self.element_block[e]
    }

    /// Value and gradient of the block polynomial of `block` at `(x, y)`.
    pub fn eval_in_block(&self, block: usize, x: f64, y: f64) -> (f64, [f64; 2]) {
        self.blocks[block].eval(x, y)
    }

    /// Value and gradient at a point of fine element `e`.
    pub fn eval_in_element(&self, e: usize, x: f64, y: f64) -> (f64, [f64; 2]) {
        self.eval_in_block(self.element_block[e], x, y)
    }
}

/// Builds `I_2h` of the FE function with nodal values `coeffs`.
///
/// Panics if a local interpolation matrix is singular, which means the blocks
/// did not come from [`crate::mesh::macroelements`].
pub fn i2h_postprocess(space: &FeSpace, blocks: &[MacroBlock], coeffs: &[f64]) -> PostProcessedField {
    assert_eq!(coeffs.len(), space.ndofs());
    let nodes = space.mesh().nodes();
    let mut element_block = vec![usize::MAX; space.num_elements()];
    let mut polys = Vec::with_capacity(blocks.len());

    for (b, block) in blocks.iter().enumerate() {
        for &e in &block.fine_elements {
            element_block[e] = b;
        }
        let pts: Vec<[f64; 2]> = block.anchor_nodes.iter().map(|&n| nodes[n]).collect();
        let k = pts.len() as f64;
        let center = [
            pts.iter().map(|p| p[0]).sum::<f64>() / k,
            pts.iter().map(|p| p[1]).sum::<f64>() / k,
        ];
        let scale = pts
            .iter()
            .map(|p| (p[0] - center[0]).abs().max((p[1] - center[1]).abs()))
            .fold(0.0, f64::max);
        let exps = exponents(block.space);
        assert_eq!(exps.len(), pts.len(), "anchor count does not match local space");
        let vander = DMatrix::from_fn(pts.len(), exps.len(), |r, c| {
            let (xi, eta) = ((pts[r][0] - center[0]) / scale, (pts[r][1] - center[1]) / scale);
            xi.powi(exps[c].0) * eta.powi(exps[c].1)
        });
        let rhs = DVector::from_iterator(pts.len(), block.anchor_nodes.iter().map(|&n| coeffs[n]));
        let sol = vander
            .lu()
            .solve(&rhs)
            .unwrap_or_else(|| panic!("singular local interpolation matrix in macroelement {b}"));
        polys.push(BlockPoly {
            center,
            scale,
            space: block.space,
            coeffs: sol.iter().copied().collect(),
        });
    }
    assert!(
        element_block.iter().all(|&b| b != usize::MAX),
        "macroelements do not cover the mesh"
    );
    PostProcessedField {
        blocks: polys,
        element_block,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_mesh, macroelements, ElemKind};

    #[test]
    fn reproduces_quadratics_everywhere() {
        let q = |x: f64, y: f64| x * x + y * y - x * y;
        let grad = |x: f64, y: f64| [2.0 * x - y, 2.0 * y - x];
        for kind in [ElemKind::Quad, ElemKind::Triangle] {
            let space = FeSpace::new(build_mesh(8, kind).unwrap());
            let blocks = macroelements(space.mesh()).unwrap();
            let field = i2h_postprocess(&space, &blocks, &space.interpolate(q));
            for e in 0..space.num_elements() {
                for p in space.element_points(e) {
                    let (v, g) = field.eval_in_element(e, p.x[0], p.x[1]);
                    assert!((v - q(p.x[0], p.x[1])).abs() < 1e-11);
                    let ge = grad(p.x[0], p.x[1]);
                    assert!((g[0] - ge[0]).abs() < 1e-10 && (g[1] - ge[1]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn reproduces_biquadratic_on_quads() {
        let q = |x: f64, y: f64| x * x * y * y - 3.0 * x * y * y + 0.5;
        let space = FeSpace::new(build_mesh(4, ElemKind::Quad).unwrap());
        let blocks = macroelements(space.mesh()).unwrap();
        let field = i2h_postprocess(&space, &blocks, &space.interpolate(q));
        for (x, y) in [(0.1, 0.2), (0.33, 0.77), (0.9, 0.95)] {
            let e = space
                .mesh()
                .elements()
                .position(|v| {
                    let p0 = space.mesh().nodes()[v[0]];
                    let p2 = space.mesh().nodes()[v[2]];
                    x >= p0[0] && x <= p2[0] && y >= p0[1] && y <= p2[1]
                })
                .unwrap();
            assert!((field.eval_in_element(e, x, y).0 - q(x, y)).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_anchor_values() {
        let f = |x: f64, y: f64| (3.0 * x).sin() * (2.0 * y).cos();
        for kind in [ElemKind::Quad, ElemKind::Triangle] {
            let space = FeSpace::new(build_mesh(6 + 2, kind).unwrap());
            let blocks = macroelements(space.mesh()).unwrap();
            let coeffs = space.interpolate(f);
            let field = i2h_postprocess(&space, &blocks, &coeffs);
            for (b, block) in blocks.iter().enumerate() {
                for &n in &block.anchor_nodes {
                    let p = space.mesh().nodes()[n];
                    assert!((field.eval_in_block(b, p[0], p[1]).0 - coeffs[n]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn constant_field() {
        let space = FeSpace::new(build_mesh(4, ElemKind::Quad).unwrap());
        let blocks = macroelements(space.mesh()).unwrap();
        let field = i2h_postprocess(&space, &blocks, &vec![2.5; space.ndofs()]);
        let (v, g) = field.eval_in_element(5, 0.4, 0.3);
        assert!((v - 2.5).abs() < 1e-13);
        assert!(g[0].abs() < 1e-12 && g[1].abs() < 1e-12);
    }
}
