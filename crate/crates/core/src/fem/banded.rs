//! Banded Cholesky factorization for operators that are solved many times.

use super::sparse::SparseOperator;
use crate::error::{Error, Result};

/// `A = L L^T` with `L` stored row-wise over its band `[i - w, i]`.
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    n: usize,
    w: usize,
    band: Vec<f64>,
}

impl BandedCholesky {
    /// Factors the lower triangle of `a`, which is assumed symmetric.
    pub fn factor(a: &SparseOperator) -> Result<Self> {
        let n = a.n();
        let p = a.pattern();
        let w = (0..n)
            .flat_map(|i| p.row(i).iter().filter(move |&&j| j <= i).map(move |&j| i - j))
            .max()
            .unwrap_or(0);
        let stride = w + 1;
        let mut band = vec![0.0; n * stride];
        for i in 0..n {
            for (k, &j) in p.row_range(i).zip(p.row(i)) {
                if j <= i {
                    band[i * stride + w + j - i] = a.values()[k];
                }
            }
        }

        for i in 0..n {
            let lo = i.saturating_sub(w);
            let row_i = i * stride + w - i;
            for j in lo..=i {
                let row_j = j * stride + w - j;
                let li = &band[row_i + lo..row_i + j];
                let lj = &band[row_j + lo..row_j + j];
                let s = band[row_i + j] - li.iter().zip(lj).map(|(x, y)| x * y).sum::<f64>();
                if j < i {
                    band[row_i + j] = s / band[row_j + j];
                } else if s > 0.0 {
                    band[row_i + i] = s.sqrt();
                } else {
                    return Err(Error::NotPositiveDefinite { row: i, pivot: s });
                }
            }
        }
        Ok(BandedCholesky { n, w, band })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.w
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let (w, stride) = (self.w, self.w + 1);
        let row = |i: usize| i * stride + w - i;
        let mut y = b.to_vec();
        for i in 0..self.n {
            let lo = i.saturating_sub(w);
            let r = row(i);
            let s: f64 = self.band[r + lo..r + i].iter().zip(&y[lo..i]).map(|(l, v)| l * v).sum();
            y[i] = (y[i] - s) / self.band[r + i];
        }
        for i in (0..self.n).rev() {
            let lo = i.saturating_sub(w);
            let r = row(i);
            y[i] /= self.band[r + i];
            let xi = y[i];
            for (yk, l) in y[lo..i].iter_mut().zip(&self.band[r + lo..r + i]) {
                *yk -= l * xi;
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::assembly::{assemble_mass, assemble_stiffness};
    use crate::fem::dirichlet::apply_dirichlet;
    use crate::fem::space::FeSpace;
    use crate::mesh::{build_mesh, ElemKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solves_reduced_heat_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for kind in [ElemKind::Quad, ElemKind::Triangle] {
            let space = FeSpace::new(build_mesh(12, kind).unwrap());
            let a = SparseOperator::lin_comb(30.0, &assemble_mass(&space), 1.0, &assemble_stiffness(&space));
            let n = space.ndofs();
            let sys = apply_dirichlet(&space, &a, &vec![0.0; n], &vec![0.0; space.boundary_dofs().len()]).0;
            let chol = BandedCholesky::factor(&sys.matrix).unwrap();
            assert_eq!(chol.bandwidth(), 12);
            let x: Vec<f64> = (0..chol.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let got = chol.solve(&sys.matrix.matvec(&x));
            let err = got.iter().zip(&x).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(err < 1e-12, "{kind:?}: {err}");
        }
    }

    #[test]
    fn small_dense_system() {
        let a = SparseOperator::from_dense(&[vec![4.0, 2.0, 0.0], vec![2.0, 5.0, 1.0], vec![0.0, 1.0, 3.0]]);
        let chol = BandedCholesky::factor(&a).unwrap();
        let x = chol.solve(&[6.0, 8.0, 4.0]);
        for (v, e) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((v - e).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_indefinite() {
        let a = SparseOperator::from_dense(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(matches!(
            BandedCholesky::factor(&a),
            Err(Error::NotPositiveDefinite { row: 1, .. })
        ));
    }
}
