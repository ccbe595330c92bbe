//! Compressed-row sparse matrices sharing a node-adjacency pattern.

use std::sync::Arc;

/// Sorted compressed-row sparsity pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
}

impl Pattern {
    /// Couples every pair of vertices sharing an element.
    pub fn from_elements<'a>(n: usize, elements: impl Iterator<Item = &'a [usize]>) -> Self {
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
        for verts in elements {
            for &a in verts {
                rows[a].extend_from_slice(verts);
            }
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        row_ptr.push(0);
        for row in &mut rows {
            row.sort_unstable();
            row.dedup();
            col_idx.extend_from_slice(row);
            row_ptr.push(col_idx.len());
        }
        Pattern { n, row_ptr, col_idx }
    }

    /// Sub-pattern on `keep` (sorted node list), renumbered `0..keep.len()`.
    pub fn restrict(&self, keep: &[usize], n_full: usize) -> Self {
        debug_assert_eq!(n_full, self.n);
        let mut new_index = vec![usize::MAX; n_full];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let mut row_ptr = Vec::with_capacity(keep.len() + 1);
        let mut col_idx = Vec::new();
        row_ptr.push(0);
        for &i in keep {
            for &j in self.row(i) {
                if new_index[j] != usize::MAX {
                    col_idx.push(new_index[j]);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Pattern {
            n: keep.len(),
            row_ptr,
            col_idx,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.col_idx[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    pub fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        self.row_ptr[i]..self.row_ptr[i + 1]
    }

    /// Storage position of entry `(i, j)`, if structurally present.
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.row(i).binary_search(&j).ok().map(|k| self.row_ptr[i] + k)
    }
}

/// Square sparse matrix in compressed-row storage.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    pattern: Arc<Pattern>,
    values: Vec<f64>,
}

impl SparseOperator {
    pub fn zeros(pattern: Arc<Pattern>) -> Self {
        let values = vec![0.0; pattern.nnz()];
        SparseOperator { pattern, values }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let pattern = Pattern {
            n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
        };
        SparseOperator {
            pattern: Arc::new(pattern),
            values: diag.to_vec(),
        }
    }

    /// Builds from dense rows, keeping entries that are not exactly zero.
    pub fn from_dense(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut row_ptr = vec![0];
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for row in rows {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        SparseOperator {
            pattern: Arc::new(Pattern { n, row_ptr, col_idx }),
            values,
        }
    }

    pub fn pattern(&self) -> &Arc<Pattern> {
        &self.pattern
    }

    pub fn n(&self) -> usize {
        self.pattern.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pattern.position(i, j).map_or(0.0, |k| self.values[k])
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.get(i, i)).collect()
    }

    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        let p = &*self.pattern;
        assert_eq!(x.len(), p.n);
        for (i, yi) in y.iter_mut().enumerate().take(p.n) {
            let r = p.row_range(i);
            *yi = self.values[r.clone()].iter().zip(&p.col_idx[r]).map(|(v, &j)| v * x[j]).sum();
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n()];
        self.matvec_into(x, &mut y);
        y
    }

    /// `x^T A x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.matvec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.values[self.pattern.row_range(i)].iter().sum()).collect()
    }

    pub fn total_sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|A_ij - A_ji|` over stored entries (missing transposes count as zero).
    pub fn asymmetry(&self) -> f64 {
        let p = &*self.pattern;
        let mut worst: f64 = 0.0;
        for i in 0..p.n {
            for k in p.row_range(i) {
                let j = p.col_idx[k];
                worst = worst.max((self.values[k] - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        self.asymmetry() <= rel_tol * self.max_abs()
    }

    /// `alpha A + beta B` for operators on the same pattern.
    pub fn lin_comb(alpha: f64, a: &SparseOperator, beta: f64, b: &SparseOperator) -> SparseOperator {
        assert!(Arc::ptr_eq(&a.pattern, &b.pattern) || a.pattern == b.pattern);
        let values = a.values.iter().zip(&b.values).map(|(x, y)| alpha * x + beta * y).collect();
        SparseOperator {
            pattern: a.pattern.clone(),
            values,
        }
    }

    pub fn scaled(&self, alpha: f64) -> SparseOperator {
        SparseOperator {
            pattern: self.pattern.clone(),
            values: self.values.iter().map(|v| alpha * v).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut out = vec![vec![0.0; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for k in self.pattern.row_range(i) {
                row[self.pattern.col_idx[k]] = self.values[k];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_from_two_triangles() {
        let elems = [vec![0, 1, 2], vec![1, 3, 2]];
        let p = Pattern::from_elements(4, elems.iter().map(|v| v.as_slice()));
        assert_eq!(p.row(0), &[0, 1, 2]);
        assert_eq!(p.row(1), &[0, 1, 2, 3]);
        assert_eq!(p.row(3), &[1, 2, 3]);
        assert_eq!(p.position(0, 3), None);
        let r = p.restrict(&[1, 2], 4);
        assert_eq!(r.row(0), &[0, 1]);
        assert_eq!(r.nnz(), 4);
    }

    #[test]
    fn dense_round_trip_and_matvec() {
        let dense = vec![vec![2.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 2.0]];
        let a = SparseOperator::from_dense(&dense);
        assert_eq!(a.nnz(), 7);
        assert_eq!(a.to_dense(), dense);
        assert_eq!(a.matvec(&[1.0, 1.0, 1.0]), vec![1.0, 0.0, 1.0]);
        assert!(a.is_symmetric(1e-15));
        assert_eq!(a.quad_form(&[1.0, 0.0, 0.0]), 2.0);
        let b = SparseOperator::lin_comb(2.0, &a, -1.0, &a);
        assert_eq!(b.values(), a.values());
    }

    #[test]
    fn asymmetry_detected() {
        let a = SparseOperator::from_dense(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(!a.is_symmetric(1e-13));
        assert_eq!(a.asymmetry(), 2.0);
    }
}
