//! Exact dense linear algebra over rational scalars.
//!
//! Everything here is plain Gaussian elimination with exact pivoting. The
//! matrices involved never exceed a few dozen rows, so no effort is spent on
//! sparsity or pivot-size control.

use crate::scalar::Q;
use num::traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ragged row list: row {row} has length {found}, expected {expected}")]
    RaggedRows {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    found: r.len(),
                    expected: ncols,
                });
            }
        }
        Ok(QMat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer entries, convenient in tests and catalogs.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&n| crate::scalar::qi(n)).collect())
            .collect();
        QMat::from_rows(data).expect("literal rows have equal length")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> Result<QMat, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::ShapeMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("vector of length {}", v.len()),
            });
        }
        let mut out = vec![Q::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] += self.get(i, j) * &v[j];
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMat) -> Result<QMat, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> QMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = Q::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut vec = vec![Q::zero(); self.cols];
            vec[free] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                vec[p] = -r.get(row, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// One solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Q::zero();
            };
            if p != c {
                det = -det;
                for j in 0..n {
                    let a = m.get(c, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            let inv = Q::one() / pivot;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Q {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }
}

/// Rank of a list of row vectors.
pub fn rank_of_rows(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    QMat::from_rows(rows.to_vec())
        .expect("rows of equal length")
        .rank()
}

/// True if `v` lies in the row span of `rows`.
pub fn in_span(rows: &[Vec<Q>], v: &[Q]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    let base = rank_of_rows(rows);
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    rank_of_rows(&extended) == base
}

/// Reduces a spanning list of row vectors to an independent subset.
pub fn independent_subset(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut kept: Vec<Vec<Q>> = Vec::new();
    for r in rows {
        if !in_span(&kept, r) {
            kept.push(r.clone());
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn rref_identifies_pivots() {
        let m = QMat::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let (_, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = QMat::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let prod = m.mul_vec(v).unwrap();
            assert!(prod.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_finds_exact_solution() {
        let m = QMat::from_i64(&[&[2, 1], &[1, 3]]);
        let b = vec![qi(5), qi(10)];
        let x = m.solve(&b).unwrap();
        assert_eq!(x, vec![qi(1), qi(3)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = QMat::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[qi(1), qi(2)]).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let m = QMat::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMat::identity(2));
        assert_eq!(inv.mul(&m).unwrap(), QMat::identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = QMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.det(), qi(0));
    }

    #[test]
    fn det_of_triangular_product() {
        let m = QMat::from_i64(&[&[2, 5], &[0, 3]]);
        assert_eq!(m.det(), qi(6));
        let m = QMat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), qi(-1));
    }

    #[test]
    fn span_membership_is_exact() {
        let rows = vec![vec![qi(1), qi(0), q(1, 3)], vec![qi(0), qi(1), qi(2)]];
        assert!(in_span(&rows, &[qi(2), qi(3), q(2, 3) + qi(6)]));
        assert!(!in_span(&rows, &[qi(0), qi(0), qi(1)]));
    }

    #[test]
    fn independent_subset_drops_dependents() {
        let rows = vec![
            vec![qi(1), qi(1)],
            vec![qi(2), qi(2)],
            vec![qi(0), qi(1)],
        ];
        let basis = independent_subset(&rows);
        assert_eq!(basis.len(), 2);
    }

    fn small_mat() -> impl Strategy<Value = QMat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |vals| {
                let rows: Vec<Vec<Q>> = vals
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&v| qi(v)).collect())
                    .collect();
                QMat::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_plus_nullity_equals_columns(m in small_mat()) {
            prop_assert_eq!(m.rank() + m.nullspace().len(), m.ncols());
        }

        #[test]
        fn rank_is_invariant_under_transpose(m in small_mat()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn nullspace_is_annihilated(m in small_mat()) {
            for v in m.nullspace() {
                let prod = m.mul_vec(&v).unwrap();
                prop_assert!(prod.iter().all(|x| x.is_zero()));
            }
        }
    }
}
