//! Matched pairs of Lie algebras: a Lie algebra together with two
//! complementary subalgebras, the mutual actions induced by the bracket, and
//! the codimension-one normal form (character and derivation data) used by
//! the rest of the crate.

use crate::algebra::{
    add, intertwines_brackets, smul, sub, unit, AlgebraError, LieAlgebra, Subspace,
};
use crate::linalg::{LinalgError, QMat};
use crate::scalar::{fmt_ratio, is_zero, qi, Q};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatchedError {
    #[error("algebra error: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("linear algebra error: {0}")]
    Linalg(#[from] LinalgError),
    #[error("subspaces do not span the ambient algebra as a direct sum")]
    NotDirectSum,
    #[error("{0} is not closed under the bracket")]
    NotClosed(&'static str),
    #[error("expected a one-dimensional complement, found dimension {0}")]
    ComplementDimension(usize),
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("cocycle matrix must be antisymmetric")]
    CocycleNotAntisymmetric,
    #[error("form does not satisfy the cocycle equation")]
    NotCocycle,
    #[error("basis change is singular")]
    SingularMap,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("character data does not fit any classification case")]
    Unclassifiable,
}

/// Outcome of one named condition in a structured check.
#[derive(Debug, Clone)]
pub struct Clause {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Per-clause result of a structured check.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub clauses: Vec<Clause>,
}

impl PairReport {
    pub fn ok(&self) -> bool {
        self.clauses.iter().all(|c| c.ok)
    }

    fn push(&mut self, name: &'static str, ok: bool, detail: String) {
        self.clauses.push(Clause { name, ok, detail });
    }
}

impl std::fmt::Display for PairReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.clauses {
            let mark = if c.ok { "ok" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{:<28} {}", c.name, mark)?;
            } else {
                writeln!(f, "{:<28} {} ({})", c.name, mark, c.detail)?;
            }
        }
        Ok(())
    }
}

/// The two induced actions of a decomposition `g = g1 ⊕ g2`: for `x` in the
/// second factor and `a` in the first, `left[x][a]` holds the first-factor
/// component of `[x, a]` in the basis of `g1`, and `right[x][a]` the
/// second-factor component in the basis of `g2`.
#[derive(Debug, Clone)]
pub struct Actions {
    pub left: Vec<Vec<Vec<Q>>>,
    pub right: Vec<Vec<Vec<Q>>>,
}

/// A Lie algebra with an ordered pair of complementary subalgebras.
#[derive(Debug, Clone)]
pub struct MatchedPair {
    g: LieAlgebra,
    g1: Subspace,
    g2: Subspace,
}

impl MatchedPair {
    pub fn new(g: LieAlgebra, g1: Subspace, g2: Subspace) -> Result<Self, MatchedError> {
        let dim = g.dim();
        if g1.ambient_dim() != dim || g2.ambient_dim() != dim {
            return Err(MatchedError::ShapeMismatch {
                expected: dim,
                found: g1.ambient_dim().max(g2.ambient_dim()),
            });
        }
        Ok(MatchedPair { g, g1, g2 })
    }

    pub fn ambient(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn first(&self) -> &Subspace {
        &self.g1
    }

    pub fn second(&self) -> &Subspace {
        &self.g2
    }

    fn is_direct_sum(&self) -> bool {
        if self.g1.dim() + self.g2.dim() != self.g.dim() {
            return false;
        }
        let mut rows: Vec<Vec<Q>> = self.g1.basis().to_vec();
        rows.extend(self.g2.basis().to_vec());
        crate::linalg::rank_of_rows(&rows) == self.g.dim()
    }

    /// Write `v` as `v1 + v2` with `v1` in the first and `v2` in the second
    /// subspace; returns coordinates relative to each stored basis.
    pub fn decompose(&self, v: &[Q]) -> Result<(Vec<Q>, Vec<Q>), MatchedError> {
        let n = self.g.dim();
        let n1 = self.g1.dim();
        let n2 = self.g2.dim();
        if v.len() != n {
            return Err(MatchedError::ShapeMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let mut m = QMat::zeros(n, n1 + n2);
        for (c, b) in self.g1.basis().iter().enumerate() {
            for r in 0..n {
                m.set(r, c, b[r].clone());
            }
        }
        for (c, b) in self.g2.basis().iter().enumerate() {
            for r in 0..n {
                m.set(r, n1 + c, b[r].clone());
            }
        }
        let x = m.solve(v).ok_or(MatchedError::NotDirectSum)?;
        Ok((x[..n1].to_vec(), x[n1..].to_vec()))
    }

    fn embed(basis: &[Vec<Q>], coords: &[Q]) -> Vec<Q> {
        let dim = basis[0].len();
        let mut out = vec![Q::zero(); dim];
        for (c, b) in coords.iter().zip(basis) {
            out = add(&out, &smul(c, b));
        }
        out
    }

    pub fn embed_first(&self, coords: &[Q]) -> Vec<Q> {
        Self::embed(self.g1.basis(), coords)
    }

    pub fn embed_second(&self, coords: &[Q]) -> Vec<Q> {
        Self::embed(self.g2.basis(), coords)
    }

    /// Bracket tables of the two subalgebras in their stored bases.
    pub fn subalgebras(&self) -> Result<(LieAlgebra, LieAlgebra), MatchedError> {
        Ok((
            self.induced_subalgebra(&self.g1, "first factor")?,
            self.induced_subalgebra(&self.g2, "second factor")?,
        ))
    }

    fn induced_subalgebra(
        &self,
        s: &Subspace,
        which: &'static str,
    ) -> Result<LieAlgebra, MatchedError> {
        let m = s.dim();
        let labels: Vec<String> = (0..m)
            .map(|i| self.label_for(&s.basis()[i], i))
            .collect();
        let mut c = vec![vec![vec![Q::zero(); m]; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let w = self.g.bracket(&s.basis()[i], &s.basis()[j])?;
                let coords = s.coordinates(&w).ok_or(MatchedError::NotClosed(which))?;
                for (k, v) in coords.into_iter().enumerate() {
                    c[i][j][k] = v.clone();
                    c[j][i][k] = -v;
                }
            }
        }
        Ok(LieAlgebra::new(labels, c)?)
    }

    fn label_for(&self, basis_vec: &[Q], fallback: usize) -> String {
        for (idx, lbl) in self.g.labels().iter().enumerate() {
            if basis_vec == unit(self.g.dim(), idx).as_slice() {
                return lbl.clone();
            }
        }
        format!("e{}", fallback + 1)
    }

    /// The mutual actions induced by the ambient bracket, as coordinate
    /// tables over the stored bases.
    pub fn actions(&self) -> Result<Actions, MatchedError> {
        if !self.is_direct_sum() {
            return Err(MatchedError::NotDirectSum);
        }
        let n1 = self.g1.dim();
        let n2 = self.g2.dim();
        let mut left = vec![vec![Vec::new(); n1]; n2];
        let mut right = vec![vec![Vec::new(); n1]; n2];
        for x in 0..n2 {
            for a in 0..n1 {
                let w = self.g.bracket(&self.g2.basis()[x], &self.g1.basis()[a])?;
                let (p, q) = self.decompose(&w)?;
                left[x][a] = p;
                right[x][a] = q;
            }
        }
        Ok(Actions { left, right })
    }

    /// Check every defining condition of a matched pair, one clause per
    /// condition: the decomposition is a direct sum, both subspaces are
    /// subalgebras, the induced actions are module actions, and the two
    /// action compatibility identities hold.
    pub fn check(&self) -> Result<PairReport, MatchedError> {
        let mut report = PairReport { clauses: Vec::new() };

        let direct = self.is_direct_sum();
        report.push(
            "direct_sum",
            direct,
            if direct {
                String::new()
            } else {
                format!(
                    "dim {} + dim {} must span dim {}",
                    self.g1.dim(),
                    self.g2.dim(),
                    self.g.dim()
                )
            },
        );
        if !direct {
            return Ok(report);
        }

        let sub1 = self.induced_subalgebra(&self.g1, "first factor");
        let sub2 = self.induced_subalgebra(&self.g2, "second factor");
        report.push(
            "first_factor_closed",
            sub1.is_ok(),
            String::new(),
        );
        report.push(
            "second_factor_closed",
            sub2.is_ok(),
            String::new(),
        );
        let (l1, l2) = match (sub1, sub2) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(report),
        };

        let acts = self.actions()?;
        let n1 = l1.dim();
        let n2 = l2.dim();

        // x acting on a vector of first-factor coordinates, and a first-factor
        // basis element acting on second-factor coordinates.
        let act_left = |x: usize, v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); n1];
            for (a, coef) in v.iter().enumerate() {
                out = add(&out, &smul(coef, &acts.left[x][a]));
            }
            out
        };
        let act_right = |w: &[Q], a: usize| -> Vec<Q> {
            let mut out = vec![Q::zero(); n2];
            for (x, coef) in w.iter().enumerate() {
                out = add(&out, &smul(coef, &acts.right[x][a]));
            }
            out
        };

        // [x,y] ▷ a = x ▷ (y ▷ a) − y ▷ (x ▷ a)
        let mut ok = true;
        let mut detail = String::new();
        'lm: for x in 0..n2 {
            for y in x + 1..n2 {
                let xy = l2.bracket(&unit(n2, x), &unit(n2, y))?;
                for a in 0..n1 {
                    let lhs: Vec<Q> = {
                        let mut out = vec![Q::zero(); n1];
                        for (z, coef) in xy.iter().enumerate() {
                            out = add(&out, &smul(coef, &acts.left[z][a]));
                        }
                        out
                    };
                    let rhs = sub(
                        &act_left(x, &acts.left[y][a]),
                        &act_left(y, &acts.left[x][a]),
                    );
                    if lhs != rhs {
                        ok = false;
                        detail = format!(
                            "fails on ({}, {}) acting on {}",
                            l2.labels()[x],
                            l2.labels()[y],
                            l1.labels()[a]
                        );
                        break 'lm;
                    }
                }
            }
        }
        report.push("first_factor_module", ok, detail);

        // x ◁ [a,b] = (x ◁ a) ◁ b − (x ◁ b) ◁ a
        let mut ok = true;
        let mut detail = String::new();
        'rm: for x in 0..n2 {
            for a in 0..n1 {
                for b in a + 1..n1 {
                    let ab = l1.bracket(&unit(n1, a), &unit(n1, b))?;
                    let lhs: Vec<Q> = {
                        let mut out = vec![Q::zero(); n2];
                        for (c, coef) in ab.iter().enumerate() {
                            out = add(&out, &smul(coef, &acts.right[x][c]));
                        }
                        out
                    };
                    let rhs = sub(
                        &act_right(&acts.right[x][a], b),
                        &act_right(&acts.right[x][b], a),
                    );
                    if lhs != rhs {
                        ok = false;
                        detail = format!(
                            "fails on {} acting through ({}, {})",
                            l2.labels()[x],
                            l1.labels()[a],
                            l1.labels()[b]
                        );
                        break 'rm;
                    }
                }
            }
        }
        report.push("second_factor_module", ok, detail);

        // x ▷ [a,b] = [x ▷ a, b] + [a, x ▷ b] + (x ◁ a) ▷ b − (x ◁ b) ▷ a
        let mut ok = true;
        let mut detail = String::new();
        'c1: for x in 0..n2 {
            for a in 0..n1 {
                for b in a + 1..n1 {
                    let ab = l1.bracket(&unit(n1, a), &unit(n1, b))?;
                    let lhs: Vec<Q> = {
                        let mut out = vec![Q::zero(); n1];
                        for (c, coef) in ab.iter().enumerate() {
                            out = add(&out, &smul(coef, &acts.left[x][c]));
                        }
                        out
                    };
                    let mut rhs = l1.bracket(&acts.left[x][a], &unit(n1, b))?;
                    rhs = add(&rhs, &l1.bracket(&unit(n1, a), &acts.left[x][b])?);
                    rhs = add(&rhs, &{
                        let mut out = vec![Q::zero(); n1];
                        for (z, coef) in acts.right[x][a].iter().enumerate() {
                            out = add(&out, &smul(coef, &acts.left[z][b]));
                        }
                        out
                    });
                    rhs = sub(&rhs, &{
                        let mut out = vec![Q::zero(); n1];
                        for (z, coef) in acts.right[x][b].iter().enumerate() {
                            out = add(&out, &smul(coef, &acts.left[z][a]));
                        }
                        out
                    });
                    if lhs != rhs {
                        ok = false;
                        detail = format!(
                            "fails on {} against ({}, {})",
                            l2.labels()[x],
                            l1.labels()[a],
                            l1.labels()[b]
                        );
                        break 'c1;
                    }
                }
            }
        }
        report.push("left_action_compatibility", ok, detail);

        // [x,y] ◁ a = [x, y ◁ a] + [x ◁ a, y] + x ◁ (y ▷ a) − y ◁ (x ▷ a)
        let mut ok = true;
        let mut detail = String::new();
        'c2: for x in 0..n2 {
            for y in x + 1..n2 {
                let xy = l2.bracket(&unit(n2, x), &unit(n2, y))?;
                for a in 0..n1 {
                    let lhs: Vec<Q> = {
                        let mut out = vec![Q::zero(); n2];
                        for (z, coef) in xy.iter().enumerate() {
                            out = add(&out, &smul(coef, &acts.right[z][a]));
                        }
                        out
                    };
                    let mut rhs = l2.bracket(&unit(n2, x), &acts.right[y][a])?;
                    rhs = add(&rhs, &l2.bracket(&acts.right[x][a], &unit(n2, y))?);
                    rhs = add(&rhs, &act_right(&acts.left[y][a], x));
                    rhs = sub(&rhs, &act_right(&acts.left[x][a], y));
                    if lhs != rhs {
                        ok = false;
                        detail = format!(
                            "fails on ({}, {}) against {}",
                            l2.labels()[x],
                            l2.labels()[y],
                            l1.labels()[a]
                        );
                        break 'c2;
                    }
                }
            }
        }
        report.push("right_action_compatibility", ok, detail);

        Ok(report)
    }
}

/// Codimension-one normal form: an n-dimensional Lie algebra acted on by a
/// one-dimensional complement through a character `chi` and a linear map
/// `beta`, so that bracketing a first-factor element `X` with the generator
/// `A` of the complement gives `beta(X) + chi(X) A`.
#[derive(Debug, Clone)]
pub struct NPlus1Data {
    pub g1: LieAlgebra,
    pub chi: Vec<Q>,
    pub beta: QMat,
    pub a_label: String,
}

impl NPlus1Data {
    pub fn new(
        g1: LieAlgebra,
        chi: Vec<Q>,
        beta: QMat,
        a_label: &str,
    ) -> Result<Self, MatchedError> {
        let n = g1.dim();
        if chi.len() != n {
            return Err(MatchedError::ShapeMismatch {
                expected: n,
                found: chi.len(),
            });
        }
        if beta.nrows() != n || beta.ncols() != n {
            return Err(MatchedError::ShapeMismatch {
                expected: n,
                found: beta.nrows().max(beta.ncols()),
            });
        }
        Ok(NPlus1Data {
            g1,
            chi,
            beta,
            a_label: a_label.to_string(),
        })
    }

    pub fn dim(&self) -> usize {
        self.g1.dim()
    }

    pub fn chi_of(&self, v: &[Q]) -> Q {
        self.chi
            .iter()
            .zip(v)
            .fold(Q::zero(), |acc, (c, x)| acc + c.clone() * x.clone())
    }

    pub fn beta_of(&self, v: &[Q]) -> Vec<Q> {
        self.beta.mul_vec(v).expect("dimension checked at construction")
    }

    /// The covector `chi ∘ beta^n`.
    pub fn chi_beta_pow(&self, n: u32) -> Vec<Q> {
        let mut row = self.chi.clone();
        for _ in 0..n {
            let mut next = vec![Q::zero(); row.len()];
            for (j, slot) in next.iter_mut().enumerate() {
                for (i, r) in row.iter().enumerate() {
                    *slot += r.clone() * self.beta.get(i, j).clone();
                }
            }
            row = next;
        }
        row
    }

    /// Check the identities that make `(chi, beta)` codimension-one matched
    /// pair data: `chi` kills brackets, `beta` is a twisted derivation, the
    /// iterated character identities hold, and the first three iterates of
    /// the character under `beta` are linearly dependent.
    pub fn check(&self) -> Result<PairReport, MatchedError> {
        let n = self.g1.dim();
        let mut report = PairReport { clauses: Vec::new() };

        let mut ok = true;
        let mut detail = String::new();
        'k: for i in 0..n {
            for j in i + 1..n {
                let br = self.g1.bracket(&unit(n, i), &unit(n, j))?;
                if !is_zero(&self.chi_of(&br)) {
                    ok = false;
                    detail = format!(
                        "chi([{}, {}]) = {}",
                        self.g1.labels()[i],
                        self.g1.labels()[j],
                        fmt_ratio(&self.chi_of(&br))
                    );
                    break 'k;
                }
            }
        }
        report.push("char_kills_brackets", ok, detail);

        // beta[X,Y] = [X, beta Y] + [beta X, Y] + beta(X) chi(Y) − beta(Y) chi(X)
        let mut ok = true;
        let mut detail = String::new();
        'd: for i in 0..n {
            for j in i + 1..n {
                let ei = unit(n, i);
                let ej = unit(n, j);
                let lhs = self.beta_of(&self.g1.bracket(&ei, &ej)?);
                let mut rhs = self.g1.bracket(&ei, &self.beta_of(&ej))?;
                rhs = add(&rhs, &self.g1.bracket(&self.beta_of(&ei), &ej)?);
                rhs = add(&rhs, &smul(&self.chi_of(&ej), &self.beta_of(&ei)));
                rhs = sub(&rhs, &smul(&self.chi_of(&ei), &self.beta_of(&ej)));
                if lhs != rhs {
                    ok = false;
                    detail = format!(
                        "fails on ({}, {})",
                        self.g1.labels()[i],
                        self.g1.labels()[j]
                    );
                    break 'd;
                }
            }
        }
        report.push("twisted_derivation", ok, detail);

        let iterated = self.iterated_derivation_identity(4)?;
        report.push(
            "iterated_derivation_law",
            iterated.is_none(),
            iterated
                .map(|(m, i, j)| {
                    format!(
                        "fails at power {} on ({}, {})",
                        m,
                        self.g1.labels()[i],
                        self.g1.labels()[j]
                    )
                })
                .unwrap_or_default(),
        );

        let mut ok = true;
        let mut detail = String::new();
        for m in [1u32, 2] {
            if let Some((i, j)) = self.char_power_identity(m)? {
                ok = false;
                detail = format!(
                    "fails at power {} on ({}, {})",
                    m,
                    self.g1.labels()[i],
                    self.g1.labels()[j]
                );
                break;
            }
        }
        report.push("char_power_identity", ok, detail);

        let rows = vec![
            self.chi_beta_pow(0),
            self.chi_beta_pow(1),
            self.chi_beta_pow(2),
        ];
        let dependent = crate::linalg::rank_of_rows(&rows) <= 2;
        report.push(
            "char_iterates_dependent",
            dependent,
            if dependent {
                String::new()
            } else {
                "chi, chi beta, chi beta^2 are independent".to_string()
            },
        );

        Ok(report)
    }

    fn beta_pow(&self, m: u32) -> QMat {
        let n = self.g1.dim();
        let mut p = QMat::identity(n);
        for _ in 0..m {
            p = self.beta.mul(&p).expect("square matrices of equal size");
        }
        p
    }

    /// Check the expansion of `beta^m([X,Y])` that follows from the
    /// twisted-derivation law by induction, for `1 ≤ m ≤ max_power`:
    ///
    /// `beta^m([X,Y]) = Σ_k C(m,k) [beta^k X, beta^{m-k} Y]
    ///    + Σ_{k≥1} C(m,k-1) (beta^k(X) chi(beta^{m-k} Y) − beta^k(Y) chi(beta^{m-k} X))`.
    ///
    /// Returns the first failing `(power, i, j)`.
    pub fn iterated_derivation_identity(
        &self,
        max_power: u32,
    ) -> Result<Option<(u32, usize, usize)>, MatchedError> {
        let n = self.g1.dim();
        let powers: Vec<QMat> = (0..=max_power).map(|m| self.beta_pow(m)).collect();
        for m in 1..=max_power as usize {
            for i in 0..n {
                for j in i + 1..n {
                    let ei = unit(n, i);
                    let ej = unit(n, j);
                    let lhs = powers[m].mul_vec(&self.g1.bracket(&ei, &ej)?)?;
                    let mut rhs = vec![Q::zero(); n];
                    for k in 0..=m {
                        let bk_x = powers[k].mul_vec(&ei)?;
                        let bmk_y = powers[m - k].mul_vec(&ej)?;
                        let term = smul(&binom(m, k), &self.g1.bracket(&bk_x, &bmk_y)?);
                        rhs = add(&rhs, &term);
                    }
                    for k in 1..=m {
                        let bk_x = powers[k].mul_vec(&ei)?;
                        let bk_y = powers[k].mul_vec(&ej)?;
                        let bmk_x = powers[m - k].mul_vec(&ei)?;
                        let bmk_y = powers[m - k].mul_vec(&ej)?;
                        let c = binom(m, k - 1);
                        rhs = add(&rhs, &smul(&(c.clone() * self.chi_of(&bmk_y)), &bk_x));
                        rhs = sub(&rhs, &smul(&(c * self.chi_of(&bmk_x)), &bk_y));
                    }
                    if lhs != rhs {
                        return Ok(Some((m as u32, i, j)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Check the scalar identity
    /// `chi(beta^m [X,Y]) = m (chi(beta^m X) chi(Y) − chi(beta^m Y) chi(X))`
    /// on all basis pairs, returning the first failing `(i, j)`.
    ///
    /// This is a theorem for `m ≤ 2`, and for every `m` when `chi ∘ beta` is
    /// proportional to `chi`; for higher powers with independent `chi` and
    /// `chi ∘ beta` the cross terms of the full expansion survive and the
    /// identity can fail on perfectly valid data.
    pub fn char_power_identity(&self, m: u32) -> Result<Option<(usize, usize)>, MatchedError> {
        let n = self.g1.dim();
        let row = self.chi_beta_pow(m);
        let eval = |v: &[Q]| -> Q {
            row.iter()
                .zip(v)
                .fold(Q::zero(), |acc, (c, x)| acc + c.clone() * x.clone())
        };
        for i in 0..n {
            for j in i + 1..n {
                let ei = unit(n, i);
                let ej = unit(n, j);
                let lhs = eval(&self.g1.bracket(&ei, &ej)?);
                let rhs =
                    qi(m as i64) * (eval(&ei) * self.chi_of(&ej) - eval(&ej) * self.chi_of(&ei));
                if lhs != rhs {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Assemble the ambient Lie algebra on the basis of `g1` followed by the
    /// complement generator. Without a cocycle this is the split form, in
    /// which `[X, A] = beta(X) + chi(X) A`. With a cocycle `u` it is the
    /// central-extension form `[A, X] = chi(X) A`,
    /// `[X, Y] = [X, Y]_1 + u(X, Y) A`, where the derivation does not enter
    /// the bracket (it reappears in the induced cobracket).
    pub fn build_ambient(&self, cocycle: Option<&QMat>) -> Result<LieAlgebra, MatchedError> {
        let n = self.g1.dim();
        if let Some(u) = cocycle {
            if u.nrows() != n || u.ncols() != n {
                return Err(MatchedError::ShapeMismatch {
                    expected: n,
                    found: u.nrows().max(u.ncols()),
                });
            }
            for i in 0..n {
                for j in 0..n {
                    if *u.get(i, j) != -u.get(j, i).clone() {
                        return Err(MatchedError::CocycleNotAntisymmetric);
                    }
                }
            }
        }
        let dim = n + 1;
        let mut labels: Vec<String> = self.g1.labels().to_vec();
        labels.push(self.a_label.clone());
        let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.g1.structure_constant(i, j, k).clone();
                }
            }
        }
        match cocycle {
            None => {
                for i in 0..n {
                    let b = self.beta_of(&unit(n, i));
                    for (k, v) in b.iter().enumerate() {
                        c[i][n][k] = v.clone();
                        c[n][i][k] = -v.clone();
                    }
                    c[i][n][n] = self.chi[i].clone();
                    c[n][i][n] = -self.chi[i].clone();
                }
            }
            Some(u) => {
                for i in 0..n {
                    for j in 0..n {
                        c[i][j][n] = u.get(i, j).clone();
                    }
                    c[n][i][n] = self.chi[i].clone();
                    c[i][n][n] = -self.chi[i].clone();
                }
            }
        }
        Ok(LieAlgebra::new(labels, c)?)
    }

    /// The split ambient algebra packaged as a matched pair with the
    /// complement spanned by the final basis vector.
    pub fn matched_pair(&self) -> Result<MatchedPair, MatchedError> {
        let n = self.g1.dim();
        let g = self.build_ambient(None)?;
        let g1 = Subspace::coordinate(n + 1, &(0..n).collect::<Vec<_>>());
        let g2 = Subspace::coordinate(n + 1, &[n]);
        MatchedPair::new(g, g1, g2)
    }
}

fn binom(m: usize, k: usize) -> Q {
    let mut v: i64 = 1;
    for i in 0..k.min(m - k) {
        v = v * (m - i) as i64 / (i + 1) as i64;
    }
    qi(v)
}

/// Recover the character and derivation of a matched pair whose second
/// factor is one-dimensional, relative to the stored bases.
pub fn extract_chi_beta(mp: &MatchedPair) -> Result<NPlus1Data, MatchedError> {
    if mp.second().dim() != 1 {
        return Err(MatchedError::ComplementDimension(mp.second().dim()));
    }
    let (g1, _) = mp.subalgebras()?;
    let n = g1.dim();
    let a_vec = mp.second().basis()[0].clone();
    let a_label = mp.label_for(&a_vec, n);
    let mut chi = vec![Q::zero(); n];
    let mut beta = QMat::zeros(n, n);
    for i in 0..n {
        let w = mp.ambient().bracket(&mp.first().basis()[i], &a_vec)?;
        let (p, q) = mp.decompose(&w)?;
        for (k, v) in p.into_iter().enumerate() {
            beta.set(k, i, v);
        }
        chi[i] = q[0].clone();
    }
    NPlus1Data::new(g1, chi, beta, &a_label)
}

/// The three mutually exclusive shapes of nonsplit codimension-one data, in
/// terms of the character `chi` and the derivation `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trichotomy {
    /// `chi = 0`.
    CharZero,
    /// `chi ≠ 0` and `beta` preserves the kernel of `chi`.
    StableCharKernel,
    /// `chi` and `chi ∘ beta` are independent and `beta` preserves their
    /// joint kernel.
    StableJointKernel,
}

impl Trichotomy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trichotomy::CharZero => "char_zero",
            Trichotomy::StableCharKernel => "stable_char_kernel",
            Trichotomy::StableJointKernel => "stable_joint_kernel",
        }
    }
}

impl std::fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classify valid codimension-one data into one of the three shapes.
pub fn trichotomy(data: &NPlus1Data) -> Result<Trichotomy, MatchedError> {
    if data.chi.iter().all(is_zero) {
        return Ok(Trichotomy::CharZero);
    }
    let chi_rows = QMat::from_rows(vec![data.chi.clone()])?;
    let kernel = chi_rows.nullspace();
    let stable = kernel
        .iter()
        .all(|v| is_zero(&data.chi_of(&data.beta_of(v))));
    if stable {
        return Ok(Trichotomy::StableCharKernel);
    }
    let chb = data.chi_beta_pow(1);
    if crate::linalg::rank_of_rows(&[data.chi.clone(), chb.clone()]) != 2 {
        return Err(MatchedError::Unclassifiable);
    }
    let joint = QMat::from_rows(vec![data.chi.clone(), chb.clone()])?.nullspace();
    let eval_chb = |v: &[Q]| -> Q {
        chb.iter()
            .zip(v)
            .fold(Q::zero(), |acc, (c, x)| acc + c.clone() * x.clone())
    };
    let joint_stable = joint.iter().all(|v| {
        let bv = data.beta_of(v);
        is_zero(&data.chi_of(&bv)) && is_zero(&eval_chb(&bv))
    });
    if joint_stable {
        Ok(Trichotomy::StableJointKernel)
    } else {
        Err(MatchedError::Unclassifiable)
    }
}

/// Check that `(t, s)` is an isomorphism of codimension-one data from `a` to
/// `b`: the columns of `t` are the images of the basis of `a.g1`, the
/// complement generator maps to `s` times the target generator, and the
/// bracket, character, and derivation transform accordingly
/// (`chi_b(t X) = chi_a(X)`, `beta_b(t X) = t(beta_a(X)) / s`).
pub fn verify_isomorphism(
    a: &NPlus1Data,
    b: &NPlus1Data,
    t: &QMat,
    s: &Q,
) -> Result<bool, MatchedError> {
    let n = a.dim();
    if b.dim() != n || t.nrows() != n || t.ncols() != n {
        return Err(MatchedError::ShapeMismatch {
            expected: n,
            found: b.dim().max(t.nrows()).max(t.ncols()),
        });
    }
    if is_zero(s) {
        return Err(MatchedError::ZeroScale);
    }
    if t.inverse().is_none() {
        return Err(MatchedError::SingularMap);
    }
    if !intertwines_brackets(&a.g1, &b.g1, t)? {
        return Ok(false);
    }
    let s_inv = qi(1) / s.clone();
    for i in 0..n {
        let ei = unit(n, i);
        let ti = t.mul_vec(&ei)?;
        if b.chi_of(&ti) != a.chi_of(&ei) {
            return Ok(false);
        }
        let lhs = b.beta_of(&ti);
        let rhs = smul(&s_inv, &t.mul_vec(&a.beta_of(&ei))?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebra;
    use crate::scalar::q;

    fn sample_data() -> NPlus1Data {
        // [X, Y] = -Y, chi = (1, 0), beta(X) = aY, beta(Y) = X with a = -1.
        let g1 = LieAlgebra::from_table(&["X", "Y"], &[(0, 1, vec![qi(0), qi(-1)])]).unwrap();
        let beta = QMat::from_rows(vec![vec![qi(0), qi(1)], vec![qi(-1), qi(0)]]).unwrap();
        NPlus1Data::new(g1, vec![qi(1), qi(0)], beta, "A").unwrap()
    }

    #[test]
    fn sample_data_satisfies_identities() {
        let data = sample_data();
        let report = data.check().unwrap();
        assert!(report.ok(), "{}", report);
    }

    #[test]
    fn ambient_of_sample_data_is_a_matched_pair() {
        let data = sample_data();
        let mp = data.matched_pair().unwrap();
        let report = mp.check().unwrap();
        assert!(report.ok(), "{}", report);
        assert!(mp.ambient().check_jacobi().ok());
    }

    #[test]
    fn extraction_inverts_ambient_construction() {
        let data = sample_data();
        let mp = data.matched_pair().unwrap();
        let back = extract_chi_beta(&mp).unwrap();
        assert_eq!(back.chi, data.chi);
        assert_eq!(back.beta, data.beta);
        assert_eq!(
            back.g1.structure_constants(),
            data.g1.structure_constants()
        );
        assert_eq!(back.a_label, "A");
    }

    #[test]
    fn broken_derivation_is_reported() {
        // beta(Y) = Y is not a twisted derivation for [X, Y] = -Y, chi = (1, 0):
        // beta[X,Y] = -Y while the right side evaluates to -2Y.
        let g1 = LieAlgebra::from_table(&["X", "Y"], &[(0, 1, vec![qi(0), qi(-1)])]).unwrap();
        let beta = QMat::from_rows(vec![vec![qi(0), qi(0)], vec![qi(0), qi(1)]]).unwrap();
        let data = NPlus1Data::new(g1, vec![qi(1), qi(0)], beta, "A").unwrap();
        let report = data.check().unwrap();
        assert!(!report.ok());
        let clause = report
            .clauses
            .iter()
            .find(|c| c.name == "twisted_derivation")
            .unwrap();
        assert!(!clause.ok);
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_table(
            &["H", "X", "Y"],
            &[
                (0, 1, vec![qi(0), qi(2), qi(0)]),
                (0, 2, vec![qi(0), qi(0), qi(-2)]),
                (1, 2, vec![qi(1), qi(0), qi(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn nonmatched_decomposition_fails_closure() {
        // sl2 with g1 = span(H) and g2 = span(X, Y): the second factor is not
        // closed, since [X, Y] = H.
        let g1 = Subspace::coordinate(3, &[0]);
        let g2 = Subspace::coordinate(3, &[1, 2]);
        let mp = MatchedPair::new(sl2(), g1, g2).unwrap();
        let report = mp.check().unwrap();
        assert!(!report.ok());
        assert!(report
            .clauses
            .iter()
            .any(|c| c.name == "second_factor_closed" && !c.ok));
    }

    #[test]
    fn triangular_complement_in_sl2_is_a_matched_pair() {
        // Any direct-sum decomposition into two subalgebras qualifies; a
        // one-dimensional complement is always closed.
        let g1 = Subspace::coordinate(3, &[0, 1]);
        let g2 = Subspace::new(3, vec![vec![qi(0), qi(1), qi(1)]]).unwrap();
        let mp = MatchedPair::new(sl2(), g1, g2).unwrap();
        let report = mp.check().unwrap();
        assert!(report.ok(), "{}", report);
        let data = extract_chi_beta(&mp).unwrap();
        assert!(data.check().unwrap().ok());
    }

    #[test]
    fn char_power_display_breaks_beyond_two_on_joint_kernel_data() {
        // On data where chi and chi ∘ beta are independent, the simplified
        // scalar display is only a theorem up to the second power; the full
        // expansion holds at every power.
        let data = sample_data();
        assert!(data.char_power_identity(1).unwrap().is_none());
        assert!(data.char_power_identity(2).unwrap().is_none());
        assert_eq!(data.char_power_identity(3).unwrap(), Some((0, 1)));
        assert!(data.iterated_derivation_identity(6).unwrap().is_none());

        // Where chi ∘ beta is proportional to chi, the display holds at all
        // powers: [X, Y] = dY, chi = (1, 0), beta(X) = X + bY, beta(Y) = dY.
        let g1 = LieAlgebra::from_table(&["X", "Y"], &[(0, 1, vec![qi(0), qi(-1)])]).unwrap();
        let beta = QMat::from_rows(vec![vec![qi(1), qi(0)], vec![qi(1), qi(-1)]]).unwrap();
        let stable = NPlus1Data::new(g1, vec![qi(1), qi(0)], beta, "A").unwrap();
        assert!(stable.check().unwrap().ok());
        for m in 1..=6 {
            assert!(stable.char_power_identity(m).unwrap().is_none(), "m={}", m);
        }
    }

    #[test]
    fn trichotomy_classifies_the_three_shapes() {
        // chi = 0.
        let abelian = LieAlgebra::abelian(&["X", "Y"]);
        let zero = QMat::zeros(2, 2);
        let d1 = NPlus1Data::new(abelian.clone(), vec![qi(0), qi(0)], zero.clone(), "A").unwrap();
        assert_eq!(trichotomy(&d1).unwrap(), Trichotomy::CharZero);

        // chi = (1, 0), beta diagonal: kernel span(Y) is preserved.
        let diag = QMat::from_rows(vec![vec![qi(1), qi(0)], vec![qi(0), q(1, 2)]]).unwrap();
        let d2 = NPlus1Data::new(abelian, vec![qi(1), qi(0)], diag, "A").unwrap();
        assert_eq!(trichotomy(&d2).unwrap(), Trichotomy::StableCharKernel);

        // The rotation-like sample: beta(Y) = X escapes the kernel of chi.
        let d3 = sample_data();
        assert_eq!(trichotomy(&d3).unwrap(), Trichotomy::StableJointKernel);
    }

    #[test]
    fn isomorphism_check_accepts_rescaling_and_rejects_mismatch() {
        // Data with beta(X) = X + Y, beta(Y) = Y on an abelian algebra; the
        // map T = diag(1, 2), s = 1 is not an isomorphism onto itself, while
        // T = identity, s = 1 is.
        let abelian = LieAlgebra::abelian(&["X", "Y"]);
        let beta = QMat::from_rows(vec![vec![qi(1), qi(0)], vec![qi(1), qi(1)]]).unwrap();
        let data = NPlus1Data::new(abelian, vec![qi(0), qi(0)], beta, "A").unwrap();
        let id = QMat::identity(2);
        assert!(verify_isomorphism(&data, &data, &id, &qi(1)).unwrap());
        let t = QMat::from_rows(vec![vec![qi(1), qi(0)], vec![qi(0), qi(2)]]).unwrap();
        assert!(!verify_isomorphism(&data, &data, &t, &qi(1)).unwrap());

        // Scaling the complement by s = 1/2 doubles the derivation.
        let doubled = QMat::from_rows(vec![vec![qi(2), qi(0)], vec![qi(2), qi(2)]]).unwrap();
        let target = NPlus1Data::new(
            LieAlgebra::abelian(&["X", "Y"]),
            vec![qi(0), qi(0)],
            doubled,
            "A",
        )
        .unwrap();
        assert!(verify_isomorphism(&data, &target, &id, &q(1, 2)).unwrap());
    }

    #[test]
    fn central_extension_form_keeps_char_only() {
        let data = sample_data();
        let u = QMat::from_rows(vec![vec![qi(0), qi(3)], vec![qi(-3), qi(0)]]).unwrap();
        let amb = data.build_ambient(Some(&u)).unwrap();
        // [A, X] = chi(X) A and [X, Y] picks up the cocycle value.
        let a = unit(3, 2);
        let x = unit(3, 0);
        let y = unit(3, 1);
        assert_eq!(amb.bracket(&a, &x).unwrap(), vec![qi(0), qi(0), qi(1)]);
        assert_eq!(amb.bracket(&a, &y).unwrap(), vec![qi(0), qi(0), qi(0)]);
        assert_eq!(amb.bracket(&x, &y).unwrap(), vec![qi(0), qi(-1), qi(3)]);
    }
}
