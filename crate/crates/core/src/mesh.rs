//! Structured meshes of the unit square and their macroelement grouping.
//!
//! Nodes are numbered lexicographically, row by row in `y` and then by `x`:
//! node `(i, j)` sits at `(i/M, j/M)` and has index `j (M + 1) + i`.
//! Cell `(i, j)` produces one quadrilateral, or two triangles split along the
//! lower-left to upper-right diagonal (lower triangle first).

use std::io::Write;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElemKind {
    Triangle,
    Quad,
}

impl ElemKind {
    pub fn vertices(self) -> usize {
        match self {
            ElemKind::Triangle => 3,
            ElemKind::Quad => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ElemKind::Triangle => "tri",
            ElemKind::Quad => "quad",
        }
    }
}

impl std::str::FromStr for ElemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(ElemKind::Quad),
            "tri" | "triangle" => Ok(ElemKind::Triangle),
            other => Err(Error::InvalidConfig(format!("unknown element kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Mesh {
    nodes: Vec<[f64; 2]>,
    /// Vertex indices, counter-clockwise. Triangles use the first 3 slots.
    elements: Vec<[usize; 4]>,
    kind: ElemKind,
    /// Cells per side, when the mesh came from [`build_mesh`].
    subdivision: Option<usize>,
    boundary: Vec<bool>,
    h: f64,
}

/// Builds the `m x m` structured mesh of the unit square.
pub fn build_mesh(m: usize, kind: ElemKind) -> Result<Mesh> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidMesh(format!(
            "subdivision M must be even and at least 2, got {m}"
        )));
    }
    let np = m + 1;
    let idx = |i: usize, j: usize| j * np + i;
    let mf = m as f64;

    let mut nodes = Vec::with_capacity(np * np);
    let mut boundary = Vec::with_capacity(np * np);
    for j in 0..np {
        for i in 0..np {
            nodes.push([i as f64 / mf, j as f64 / mf]);
            boundary.push(i == 0 || j == 0 || i == m || j == m);
        }
    }

    let mut elements = Vec::with_capacity(m * m * if kind == ElemKind::Quad { 1 } else { 2 });
    for j in 0..m {
        for i in 0..m {
            let (ll, lr, ur, ul) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            match kind {
                ElemKind::Quad => elements.push([ll, lr, ur, ul]),
                ElemKind::Triangle => {
                    elements.push([ll, lr, ur, usize::MAX]);
                    elements.push([ll, ur, ul, usize::MAX]);
                }
            }
        }
    }

    Ok(Mesh {
        nodes,
        elements,
        kind,
        subdivision: Some(m),
        boundary,
        h: std::f64::consts::SQRT_2 / mf,
    })
}

impl Mesh {
    /// Wraps arbitrary node/element lists. Elements must be counter-clockwise;
    /// boundary nodes are those on the sides of the unit square. Such meshes
    /// carry no macroelement structure.
    pub fn from_parts(nodes: Vec<[f64; 2]>, elements: Vec<Vec<usize>>, kind: ElemKind) -> Result<Mesh> {
        let nv = kind.vertices();
        let mut elems = Vec::with_capacity(elements.len());
        let mut h: f64 = 0.0;
        for (e, verts) in elements.iter().enumerate() {
            if verts.len() != nv {
                return Err(Error::InvalidMesh(format!("element {e} has {} vertices", verts.len())));
            }
            if verts.iter().any(|&v| v >= nodes.len()) {
                return Err(Error::InvalidMesh(format!("element {e} references a missing node")));
            }
            let mut arr = [usize::MAX; 4];
            arr[..nv].copy_from_slice(verts);
            elems.push(arr);
        }
        let on_side = |p: &[f64; 2]| {
            let tol = 1e-12;
            p[0].abs() < tol || p[1].abs() < tol || (p[0] - 1.0).abs() < tol || (p[1] - 1.0).abs() < tol
        };
        let boundary = nodes.iter().map(on_side).collect();
        let mut mesh = Mesh {
            nodes,
            elements: elems,
            kind,
            subdivision: None,
            boundary,
            h: 0.0,
        };
        for e in 0..mesh.num_elements() {
            if mesh.signed_area(e) <= 0.0 {
                return Err(Error::InvalidMesh(format!("element {e} is not counter-clockwise")));
            }
            h = h.max(mesh.diameter(e));
        }
        mesh.h = h;
        Ok(mesh)
    }

    pub fn kind(&self) -> ElemKind {
        self.kind
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    /// Vertex indices of element `e`.
    pub fn element(&self, e: usize) -> &[usize] {
        &self.elements[e][..self.kind.vertices()]
    }

    pub fn elements(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.num_elements()).map(move |e| self.element(e))
    }

    pub fn subdivision(&self) -> Option<usize> {
        self.subdivision
    }

    /// Maximal element diameter (`sqrt(2)/M` for structured meshes).
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Cell side length `1/M` (the convention used for plotting against `h`).
    pub fn cell_size(&self) -> f64 {
        self.subdivision.map_or(self.h / std::f64::consts::SQRT_2, |m| 1.0 / m as f64)
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        self.boundary[node]
    }

    pub fn boundary_nodes(&self) -> Vec<usize> {
        (0..self.num_nodes()).filter(|&n| self.boundary[n]).collect()
    }

    pub fn interior_nodes(&self) -> Vec<usize> {
        (0..self.num_nodes()).filter(|&n| !self.boundary[n]).collect()
    }

    pub fn vertex_coords(&self, e: usize) -> Vec<[f64; 2]> {
        self.element(e).iter().map(|&v| self.nodes[v]).collect()
    }

    /// Signed area by the shoelace formula.
    pub fn signed_area(&self, e: usize) -> f64 {
        let pts = self.vertex_coords(e);
        let n = pts.len();
        0.5 * (0..n)
            .map(|k| {
                let (a, b) = (pts[k], pts[(k + 1) % n]);
                a[0] * b[1] - b[0] * a[1]
            })
            .sum::<f64>()
    }

    pub fn diameter(&self, e: usize) -> f64 {
        let pts = self.vertex_coords(e);
        let mut d: f64 = 0.0;
        for a in &pts {
            for b in &pts {
                d = d.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
            }
        }
        d
    }

    /// Plain-text dump: `x y` per node, a blank line, then vertex indices per element.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for p in &self.nodes {
            writeln!(out, "{} {}", p[0], p[1])?;
        }
        writeln!(out)?;
        for verts in self.elements() {
            let line: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Local polynomial space of a macroelement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacroSpace {
    /// Biquadratics on a 2x2 patch of squares.
    Q2,
    /// Quadratics on a coarse triangle split into 4.
    P2,
}

/// Four fine elements tiling one cell of the coarse (2h) mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroBlock {
    pub fine_elements: [usize; 4],
    /// Quads: `z1..z4` corners (ccw from lower-left), `z5..z8` edge midpoints
    /// (bottom, right, top, left), `z9` centre. Triangles: `z1..z3` coarse
    /// vertices (ccw), `z4..z6` midpoints of `z1z2`, `z2z3`, `z3z1`.
    pub anchor_nodes: Vec<usize>,
    pub space: MacroSpace,
}

/// Groups the fine elements of a structured mesh into macroelements.
pub fn macroelements(mesh: &Mesh) -> Result<Vec<MacroBlock>> {
    let m = match mesh.subdivision {
        Some(m) if m >= 2 && m % 2 == 0 => m,
        _ => {
            return Err(Error::InvalidMesh(
                "macroelements need a structured mesh with even subdivision".into(),
            ))
        }
    };
    let np = m + 1;
    let node = |i: usize, j: usize| j * np + i;
    let cell = |i: usize, j: usize| j * m + i;
    let mc = m / 2;

    let mut blocks = Vec::new();
    for bj in 0..mc {
        for bi in 0..mc {
            let (i0, j0) = (2 * bi, 2 * bj);
            let nd = |di: usize, dj: usize| node(i0 + di, j0 + dj);
            let cl = |di: usize, dj: usize| cell(i0 + di, j0 + dj);
            match mesh.kind {
                ElemKind::Quad => blocks.push(MacroBlock {
                    fine_elements: [cl(0, 0), cl(1, 0), cl(0, 1), cl(1, 1)],
                    anchor_nodes: vec![
                        nd(0, 0),
                        nd(2, 0),
                        nd(2, 2),
                        nd(0, 2),
                        nd(1, 0),
                        nd(2, 1),
                        nd(1, 2),
                        nd(0, 1),
                        nd(1, 1),
                    ],
                    space: MacroSpace::Q2,
                }),
                ElemKind::Triangle => {
                    let lower = |c: usize| 2 * c;
                    let upper = |c: usize| 2 * c + 1;
                    blocks.push(MacroBlock {
                        fine_elements: [lower(cl(0, 0)), lower(cl(1, 0)), upper(cl(1, 0)), lower(cl(1, 1))],
                        anchor_nodes: vec![nd(0, 0), nd(2, 0), nd(2, 2), nd(1, 0), nd(2, 1), nd(1, 1)],
                        space: MacroSpace::P2,
                    });
                    blocks.push(MacroBlock {
                        fine_elements: [upper(cl(0, 0)), lower(cl(0, 1)), upper(cl(0, 1)), upper(cl(1, 1))],
                        anchor_nodes: vec![nd(0, 0), nd(2, 2), nd(0, 2), nd(1, 1), nd(1, 2), nd(0, 1)],
                        space: MacroSpace::P2,
                    });
                }
            }
        }
    }
    Ok(blocks)
}
