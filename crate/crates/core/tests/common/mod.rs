//! Dense reference implementations used as oracles: element loops into a
//! dense matrix, Dirichlet rows replaced by identity rows, LU solve.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use thermistor::fem::FeSpace;

/// FE value and gradient at assembly point `q` of element `e`.
pub fn fe_at(space: &FeSpace, c: &[f64], e: usize, q: usize) -> (f64, [f64; 2]) {
    let p = &space.element_points(e)[q];
    let mut v = 0.0;
    let mut g = [0.0; 2];
    for (a, &n) in space.mesh().element(e).iter().enumerate() {
        v += c[n] * p.n[a];
        g[0] += c[n] * p.grad[a][0];
        g[1] += c[n] * p.grad[a][1];
    }
    (v, g)
}

/// `sum_e sum_q w (mass_coef N_a N_b + stiff_coef(e, q) ∇N_a·∇N_b)`.
pub fn dense_operator(space: &FeSpace, mass_coef: f64, stiff_coef: impl Fn(usize, usize) -> f64) -> DMatrix<f64> {
    let n = space.ndofs();
    let mut a = DMatrix::zeros(n, n);
    for e in 0..space.num_elements() {
        let nodes = space.mesh().element(e);
        for (q, p) in space.element_points(e).iter().enumerate() {
            let k = stiff_coef(e, q);
            for (i, &ni) in nodes.iter().enumerate() {
                for (j, &nj) in nodes.iter().enumerate() {
                    let g = p.grad[i][0] * p.grad[j][0] + p.grad[i][1] * p.grad[j][1];
                    a[(ni, nj)] += p.jxw * (mass_coef * p.n[i] * p.n[j] + k * g);
                }
            }
        }
    }
    a
}

/// `(density, N_a)` with the density given per quadrature point.
pub fn dense_load(space: &FeSpace, density: impl Fn(usize, usize, [f64; 2]) -> f64) -> DVector<f64> {
    let mut b = DVector::zeros(space.ndofs());
    for e in 0..space.num_elements() {
        let nodes = space.mesh().element(e);
        for (q, p) in space.element_points(e).iter().enumerate() {
            let f = density(e, q, p.x);
            for (i, &ni) in nodes.iter().enumerate() {
                b[ni] += p.jxw * f * p.n[i];
            }
        }
    }
    b
}

/// Replaces boundary rows by identity rows with prescribed values and solves by LU.
pub fn dense_dirichlet_solve(space: &FeSpace, mut a: DMatrix<f64>, mut b: DVector<f64>, g: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let nodes = space.mesh().nodes();
    for &i in space.boundary_dofs() {
        a.row_mut(i).fill(0.0);
        a[(i, i)] = 1.0;
        b[i] = g(nodes[i][0], nodes[i][1]);
    }
    a.lu().solve(&b).expect("dense oracle matrix is singular").iter().copied().collect()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Problem data assembled from plain function pointers.
#[derive(Clone, Copy)]
pub struct FnProblem {
    pub sigma: fn(f64) -> f64,
    pub u: fn(f64, f64, f64) -> f64,
    pub phi: fn(f64, f64, f64) -> f64,
    pub f1: fn(f64, f64, f64) -> f64,
    pub f2: fn(f64, f64, f64) -> f64,
}

impl thermistor::ProblemData for FnProblem {
    fn sigma(&self, s: f64) -> f64 {
        (self.sigma)(s)
    }
    fn exact_u(&self, x: f64, y: f64, t: f64) -> f64 {
        (self.u)(x, y, t)
    }
    fn exact_u_grad(&self, _: f64, _: f64, _: f64) -> [f64; 2] {
        [f64::NAN; 2]
    }
    fn exact_phi(&self, x: f64, y: f64, t: f64) -> f64 {
        (self.phi)(x, y, t)
    }
    fn exact_phi_grad(&self, _: f64, _: f64, _: f64) -> [f64; 2] {
        [f64::NAN; 2]
    }
    fn f1(&self, x: f64, y: f64, t: f64) -> f64 {
        (self.f1)(x, y, t)
    }
    fn f2(&self, x: f64, y: f64, t: f64) -> f64 {
        (self.f2)(x, y, t)
    }
}

/// The manufactured problem with its pieces exposed for modification.
pub fn manufactured_parts() -> FnProblem {
    use thermistor::manufactured as mf;
    FnProblem {
        sigma: mf::sigma,
        u: |x, y, t| mf::exact_fields(x, y, t).u,
        phi: |x, y, t| mf::exact_fields(x, y, t).phi,
        f1: mf::source_f1,
        f2: mf::source_f2,
    }
}

/// One BDF2 temperature update, dense.
#[allow(clippy::too_many_arguments)]
pub fn dense_temperature_bdf2(
    sp: &FeSpace,
    u1: &[f64],
    u2: &[f64],
    phi: &[f64],
    sigma_star: impl Fn(usize, usize) -> f64,
    f1: impl Fn(f64, f64) -> f64,
    tau: f64,
) -> Vec<f64> {
    let a = dense_operator(sp, 1.5 / tau, |_, _| 1.0);
    let mass = dense_operator(sp, 1.0, |_, _| 0.0);
    let hist = nalgebra::DVector::from_iterator(sp.ndofs(), u1.iter().zip(u2).map(|(a, b)| (2.0 * a - 0.5 * b) / tau));
    let joule = dense_load(sp, |e, q, _| {
        let g = fe_at(sp, phi, e, q).1;
        sigma_star(e, q) * (g[0] * g[0] + g[1] * g[1])
    });
    let src = dense_load(sp, |_, _, x| f1(x[0], x[1]));
    dense_dirichlet_solve(sp, a, mass * hist + joule + src, |_, _| 0.0)
}

pub fn sigma_star_dense<'a>(sp: &'a FeSpace, p: &'a dyn thermistor::ProblemData, u1: &'a [f64], u2: &'a [f64]) -> impl Fn(usize, usize) -> f64 + 'a {
    move |e, q| 2.0 * p.sigma(fe_at(sp, u1, e, q).0) - p.sigma(fe_at(sp, u2, e, q).0)
}

