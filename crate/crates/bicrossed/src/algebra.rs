//! Finite-dimensional Lie algebras over exact rationals.
//!
//! A [`LieAlgebra`] is a dense table of structure constants `c[i][j][k]`
//! meaning `[e_i, e_j] = sum_k c[i][j][k] e_k`. Antisymmetry is enforced at
//! construction; the Jacobi identity is a separate check so that invalid
//! tables can be built on purpose and shown to fail.

use crate::linalg::{in_span, QMat};
use crate::scalar::{fmt_ratio, parse_ratio, Q};
use num::traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest supported dimension; the catalog never exceeds it.
pub const MAX_DIM: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension {0} exceeds the supported maximum {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("structure constants have inconsistent shape at index ({0}, {1})")]
    BadShape(usize, usize),
    #[error("antisymmetry fails at c[{i}][{j}][{k}]")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("expected vectors of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("label count {0} does not match dimension {1}")]
    LabelMismatch(usize, usize),
    #[error("subspace basis vector {0} is dependent on the preceding ones")]
    DependentBasis(usize),
    #[error("invalid scalar in serialized algebra: {0}")]
    BadScalar(String),
    #[error("unsupported schema `{0}`")]
    BadSchema(String),
}

/// Lie algebra given by structure constants on a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    c: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebra {
    /// Validates shape and antisymmetry. Jacobi is *not* enforced here; see
    /// [`LieAlgebra::check_jacobi`].
    pub fn new(labels: Vec<String>, c: Vec<Vec<Vec<Q>>>) -> Result<Self, AlgebraError> {
        let dim = c.len();
        if dim > MAX_DIM {
            return Err(AlgebraError::DimensionTooLarge(dim));
        }
        if labels.len() != dim {
            return Err(AlgebraError::LabelMismatch(labels.len(), dim));
        }
        for (i, plane) in c.iter().enumerate() {
            if plane.len() != dim {
                return Err(AlgebraError::BadShape(i, plane.len()));
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != dim {
                    return Err(AlgebraError::BadShape(i, j));
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(AlgebraError::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(LieAlgebra { labels, c })
    }

    /// Abelian algebra on the given basis labels.
    pub fn abelian(labels: &[&str]) -> Self {
        let dim = labels.len();
        LieAlgebra {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            c: vec![vec![vec![Q::zero(); dim]; dim]; dim],
        }
    }

    /// Builds from a sparse table of brackets `[e_i, e_j]` with `i < j`; the
    /// antisymmetric counterparts are filled in automatically.
    pub fn from_table(
        labels: &[&str],
        brackets: &[(usize, usize, Vec<Q>)],
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, coeffs) in brackets {
            if coeffs.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: coeffs.len(),
                });
            }
            for (k, v) in coeffs.iter().enumerate() {
                c[*i][*j][k] = v.clone();
                c[*j][*i][k] = -v.clone();
            }
        }
        LieAlgebra::new(labels.iter().map(|s| s.to_string()).collect(), c)
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Q>>> {
        &self.c
    }

    /// `[u, v]` by bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Result<Vec<Q>, AlgebraError> {
        let dim = self.dim();
        if u.len() != dim || v.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: if u.len() != dim { u.len() } else { v.len() },
            });
        }
        let mut out = vec![Q::zero(); dim];
        for i in 0..dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if v[j].is_zero() {
                    continue;
                }
                let f = &u[i] * &v[j];
                for k in 0..dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &f * &self.c[i][j][k];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact Jacobi check; the report lists every violating basis triple.
    pub fn check_jacobi(&self) -> JacobiReport {
        let dim = self.dim();
        let mut violations = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for l in j + 1..dim {
                    let mut defect = vec![Q::zero(); dim];
                    for k in 0..dim {
                        let mut s = Q::zero();
                        for m in 0..dim {
                            s += &self.c[i][j][m] * &self.c[m][l][k];
                            s += &self.c[j][l][m] * &self.c[m][i][k];
                            s += &self.c[l][i][m] * &self.c[m][j][k];
                        }
                        defect[k] = s;
                    }
                    if defect.iter().any(|x| !x.is_zero()) {
                        violations.push(JacobiViolation {
                            triple: (i, j, l),
                            defect,
                        });
                    }
                }
            }
        }
        JacobiReport { violations }
    }

    /// Matrix of `ad(u) = v -> [u, v]` in the chosen basis.
    pub fn adjoint(&self, u: &[Q]) -> Result<QMat, AlgebraError> {
        let dim = self.dim();
        if u.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: u.len(),
            });
        }
        let mut m = QMat::zeros(dim, dim);
        for j in 0..dim {
            let mut basis = vec![Q::zero(); dim];
            basis[j] = num::traits::One::one();
            let col = self.bracket(u, &basis)?;
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        Ok(m)
    }

    /// Basis of the center, i.e. the joint kernel of all adjoint maps.
    pub fn center(&self) -> Subspace {
        let dim = self.dim();
        let mut rows = Vec::new();
        for j in 0..dim {
            for k in 0..dim {
                rows.push((0..dim).map(|i| self.c[i][j][k].clone()).collect());
            }
        }
        let m = QMat::from_rows(rows).expect("uniform row lengths");
        Subspace {
            ambient_dim: dim,
            basis: m.nullspace(),
        }
    }

    /// True if `d` satisfies the Leibniz rule `d[u,v] = [du,v] + [u,dv]`.
    pub fn is_derivation(&self, d: &QMat) -> Result<bool, AlgebraError> {
        let dim = self.dim();
        if d.nrows() != dim || d.ncols() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: d.nrows(),
            });
        }
        for i in 0..dim {
            for j in i + 1..dim {
                let ei = unit(dim, i);
                let ej = unit(dim, j);
                let lhs = d
                    .mul_vec(&self.bracket(&ei, &ej)?)
                    .expect("dimension checked");
                let dei = d.mul_vec(&ei).expect("dimension checked");
                let dej = d.mul_vec(&ej).expect("dimension checked");
                let rhs = add(&self.bracket(&dei, &ej)?, &self.bracket(&ei, &dej)?);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True if the span of `s` is closed under the bracket.
    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, AlgebraError> {
        self.closed_under_bracket(s, None)
    }

    /// True if `[g, s] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool, AlgebraError> {
        let dim = self.dim();
        let full: Vec<Vec<Q>> = (0..dim).map(|i| unit(dim, i)).collect();
        self.closed_under_bracket(s, Some(&full))
    }

    fn closed_under_bracket(
        &self,
        s: &Subspace,
        left: Option<&[Vec<Q>]>,
    ) -> Result<bool, AlgebraError> {
        if s.ambient_dim != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim,
            });
        }
        let lefts = left.unwrap_or(&s.basis);
        for u in lefts {
            for v in &s.basis {
                let w = self.bracket(u, v)?;
                if !s.contains(&w) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Serializable document with `p/q` string entries.
    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            schema: ALGEBRA_SCHEMA.to_string(),
            dim: self.dim(),
            labels: self.labels.clone(),
            c: self
                .c
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|r| r.iter().map(fmt_ratio).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self, AlgebraError> {
        if doc.schema != ALGEBRA_SCHEMA {
            return Err(AlgebraError::BadSchema(doc.schema.clone()));
        }
        let mut c = Vec::with_capacity(doc.c.len());
        for plane in &doc.c {
            let mut p = Vec::with_capacity(plane.len());
            for row in plane {
                let mut r = Vec::with_capacity(row.len());
                for s in row {
                    r.push(parse_ratio(s).map_err(|e| AlgebraError::BadScalar(e.to_string()))?);
                }
                p.push(r);
            }
            c.push(p);
        }
        LieAlgebra::new(doc.labels.clone(), c)
    }
}

pub const ALGEBRA_SCHEMA: &str = "bicrossed/algebra/v1";

/// Versioned JSON form of a [`LieAlgebra`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub schema: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub c: Vec<Vec<Vec<String>>>,
}

/// Outcome of the Jacobi check.
#[derive(Debug, Clone)]
pub struct JacobiReport {
    pub violations: Vec<JacobiViolation>,
}

#[derive(Debug, Clone)]
pub struct JacobiViolation {
    /// Basis indices (i, j, l) whose cyclic bracket sum fails to vanish.
    pub triple: (usize, usize, usize),
    pub defect: Vec<Q>,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "jacobi: ok")
        } else {
            write!(f, "jacobi: {} violating triples (", self.violations.len())?;
            for (n, v) in self.violations.iter().take(3).enumerate() {
                if n > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", v.triple)?;
            }
            write!(f, ")")
        }
    }
}

/// Subspace of a fixed-dimension coordinate space, stored as an independent
/// basis of row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Q>>) -> Result<Self, AlgebraError> {
        for (n, v) in basis.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
            if in_span(&basis[..n], v) {
                return Err(AlgebraError::DependentBasis(n));
            }
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// Span of selected standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let basis = indices.iter().map(|&i| unit(ambient_dim, i)).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        in_span(&self.basis, v)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let cols = QMat::from_rows(self.basis.clone()).ok()?.transpose();
        cols.solve(v)
    }
}

/// True if the linear map `phi` (columns = images of basis vectors) sends
/// brackets of `from` to brackets of `to`.
pub fn intertwines_brackets(
    from: &LieAlgebra,
    to: &LieAlgebra,
    phi: &QMat,
) -> Result<bool, AlgebraError> {
    let n = from.dim();
    if to.dim() != n || phi.nrows() != n || phi.ncols() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: to.dim().max(phi.nrows()).max(phi.ncols()),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi
                .mul_vec(&from.bracket(&unit(n, i), &unit(n, j))?)
                .expect("dimension checked");
            let pi = phi.mul_vec(&unit(n, i)).expect("dimension checked");
            let pj = phi.mul_vec(&unit(n, j)).expect("dimension checked");
            if lhs != to.bracket(&pi, &pj)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Standard basis vector.
pub fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = num::traits::One::one();
    v
}

/// Componentwise sum.
pub fn add(u: &[Q], v: &[Q]) -> Vec<Q> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// Componentwise difference.
pub fn sub(u: &[Q], v: &[Q]) -> Vec<Q> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Scalar multiple.
pub fn smul(s: &Q, v: &[Q]) -> Vec<Q> {
    v.iter().map(|a| s * a).collect()
}

/// True if all components vanish.
pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}
