//! Jacobi-preconditioned conjugate gradients.

use super::sparse::SparseOperator;
use crate::error::{Error, Result};

/// Default relative residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    /// Final `||b - A x|| / ||b||`.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solves `a x = b` for SPD `a` to relative residual `tol`, starting from zero.
pub fn solve_spd(a: &SparseOperator, b: &[f64], tol: f64) -> Result<Vec<f64>> {
    let mut x = vec![0.0; b.len()];
    solve_spd_from(a, b, &mut x, tol)?;
    Ok(x)
}

/// Like [`solve_spd`], using `x` as the initial guess and overwriting it.
///
/// Iterations are capped at `50 n`. A non-positive curvature `p^T A p` also
/// ends the iteration with [`Error::NoConvergence`].
pub fn solve_spd_from(a: &SparseOperator, b: &[f64], x: &mut [f64], tol: f64) -> Result<SolveStats> {
    let n = b.len();
    assert_eq!(a.n(), n);
    assert_eq!(x.len(), n);
    let bnorm = norm(b);
    if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return Ok(SolveStats {
            iterations: 0,
            residual: 0.0,
        });
    }
    let target = tol * bnorm;
    let max_iter = 50 * n.max(1);
    let inv_diag: Vec<f64> = a
        .diagonal()
        .iter()
        .map(|&d| if d > 0.0 { 1.0 / d } else { 1.0 })
        .collect();

    let mut r = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut ap = vec![0.0; n];
    let mut iterations = 0;

    // Outer loop restarts from the true residual if the recursive one drifted.
    loop {
        a.matvec_into(x, &mut r);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = bi - *ri;
        }
        let true_res = norm(&r);
        if true_res <= target {
            return Ok(SolveStats {
                iterations,
                residual: true_res / bnorm,
            });
        }
        if iterations >= max_iter {
            return Err(Error::NoConvergence {
                iterations,
                residual: true_res / bnorm,
            });
        }

        for i in 0..n {
            z[i] = inv_diag[i] * r[i];
        }
        p.copy_from_slice(&z);
        let mut rz = dot(&r, &z);
        loop {
            a.matvec_into(&p, &mut ap);
            let curvature = dot(&p, &ap);
            iterations += 1;
            if !(curvature > 0.0) {
                return Err(Error::NoConvergence {
                    iterations,
                    residual: norm(&r) / bnorm,
                });
            }
            let alpha = rz / curvature;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let rnorm = norm(&r);
            if rnorm <= target || iterations >= max_iter {
                break;
            }
            for i in 0..n {
                z[i] = inv_diag[i] * r[i];
            }
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
    }
}
