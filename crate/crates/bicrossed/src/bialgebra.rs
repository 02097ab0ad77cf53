//! Lie bialgebras with exact rational constants: axiom verification,
//! duality, the cocycle bicrossed product on codimension-one matched pair
//! data, pairing checks against candidate duals, and a small-basis
//! isomorphism search.
//!
//! Conventions fixed crate-wide: the wedge is `x ∧ y = x ⊗ y − y ⊗ x` with
//! no 1/2 factor, and the dual carries no extra sign in either pairing
//! identity (both choices anchored by the decomposable catalog pairs).

use crate::algebra::{unit, LieAlgebra};
use crate::linalg::QMat;
use crate::matched::{Clause, MatchedError, NPlus1Data, PairReport};
use crate::scalar::{is_zero, Q};
use num_traits::Zero;

/// A Lie algebra with a cobracket, stored as the full coefficient tensor:
/// `delta(e_i) = Σ_{a,b} d[i][a][b] e_a ⊗ e_b` with `d[i]` antisymmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBialgebra {
    algebra: LieAlgebra,
    d: Vec<Vec<Vec<Q>>>,
}

impl LieBialgebra {
    pub fn new(algebra: LieAlgebra, d: Vec<Vec<Vec<Q>>>) -> Result<Self, MatchedError> {
        let n = algebra.dim();
        if d.len() != n || d.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(MatchedError::ShapeMismatch {
                expected: n,
                found: d.len(),
            });
        }
        for i in 0..n {
            for a in 0..n {
                for b in 0..=a {
                    if d[i][a][b] != -d[i][b][a].clone() {
                        return Err(MatchedError::CocycleNotAntisymmetric);
                    }
                }
            }
        }
        Ok(LieBialgebra { algebra, d })
    }

    /// Build from wedge terms: each `(i, a, b, coeff)` contributes
    /// `coeff · e_a ∧ e_b` to `delta(e_i)`.
    pub fn from_wedge_table(
        algebra: LieAlgebra,
        terms: &[(usize, usize, usize, Q)],
    ) -> Result<Self, MatchedError> {
        let n = algebra.dim();
        let mut d = vec![vec![vec![Q::zero(); n]; n]; n];
        for (i, a, b, coeff) in terms {
            if *i >= n || *a >= n || *b >= n {
                return Err(MatchedError::ShapeMismatch {
                    expected: n,
                    found: (*i).max(*a).max(*b) + 1,
                });
            }
            d[*i][*a][*b] += coeff.clone();
            d[*i][*b][*a] -= coeff.clone();
        }
        LieBialgebra::new(algebra, d)
    }

    /// A bialgebra with the zero cobracket.
    pub fn with_zero_cobracket(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        LieBialgebra {
            algebra,
            d: vec![vec![vec![Q::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn cobracket(&self) -> &Vec<Vec<Vec<Q>>> {
        &self.d
    }

    /// The coefficient tensor of `delta` applied to a coordinate vector.
    pub fn cobracket_of(&self, v: &[Q]) -> Result<QMat, MatchedError> {
        let n = self.dim();
        if v.len() != n {
            return Err(MatchedError::ShapeMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let mut out = QMat::zeros(n, n);
        for (i, coeff) in v.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    let cur = out.get(a, b).clone();
                    out.set(a, b, cur + coeff.clone() * self.d[i][a][b].clone());
                }
            }
        }
        Ok(out)
    }

    /// Exact verification of the three axioms: Jacobi for the bracket,
    /// co-Jacobi for the cobracket, and the cocycle compatibility between
    /// them. Violated components are listed in the clause details.
    pub fn check(&self) -> PairReport {
        let n = self.dim();
        let c = self.algebra.structure_constants();
        let d = &self.d;
        let mut clauses = Vec::new();

        let jac = self.algebra.check_jacobi();
        clauses.push(Clause {
            name: "jacobi",
            ok: jac.ok(),
            detail: if jac.ok() {
                String::new()
            } else {
                format!("{} violated triples", jac.violations.len())
            },
        });

        // (iota + zeta + zeta^2) (iota ⊗ delta) delta = 0, where
        // t[a][b][c] collects the coefficient of e_a ⊗ e_b ⊗ e_c.
        let mut co_jacobi_bad = Vec::new();
        for i in 0..n {
            let mut t = vec![vec![vec![Q::zero(); n]; n]; n];
            for a in 0..n {
                for k in 0..n {
                    if is_zero(&d[i][a][k]) {
                        continue;
                    }
                    for b in 0..n {
                        for cc in 0..n {
                            t[a][b][cc] +=
                                d[i][a][k].clone() * d[k][b][cc].clone();
                        }
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for cc in 0..n {
                        let total = t[a][b][cc].clone()
                            + t[cc][a][b].clone()
                            + t[b][cc][a].clone();
                        if !is_zero(&total) {
                            co_jacobi_bad.push(format!("({},{},{},{})", i, a, b, cc));
                        }
                    }
                }
            }
        }
        clauses.push(Clause {
            name: "co_jacobi",
            ok: co_jacobi_bad.is_empty(),
            detail: co_jacobi_bad.join(" "),
        });

        // delta[e_i,e_j] = (ad_{e_i} ⊗ 1 + 1 ⊗ ad_{e_i}) delta(e_j)
        //                − (ad_{e_j} ⊗ 1 + 1 ⊗ ad_{e_j}) delta(e_i).
        let mut compat_bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for a in 0..n {
                    for b in 0..n {
                        let mut lhs = Q::zero();
                        for k in 0..n {
                            lhs += c[i][j][k].clone() * d[k][a][b].clone();
                        }
                        let mut rhs = Q::zero();
                        for p in 0..n {
                            rhs += d[j][p][b].clone() * c[i][p][a].clone();
                            rhs += d[j][a][p].clone() * c[i][p][b].clone();
                            rhs -= d[i][p][b].clone() * c[j][p][a].clone();
                            rhs -= d[i][a][p].clone() * c[j][p][b].clone();
                        }
                        if lhs != rhs {
                            compat_bad.push(format!("({},{},{},{})", i, j, a, b));
                        }
                    }
                }
            }
        }
        clauses.push(Clause {
            name: "compatibility",
            ok: compat_bad.is_empty(),
            detail: compat_bad.join(" "),
        });

        PairReport { clauses }
    }

    /// The dual bialgebra on the dual basis: its bracket constants are the
    /// transposed cobracket constants and vice versa, with no extra sign.
    /// Basis labels gain a `~` suffix, and a trailing `~` is stripped, so
    /// the involution returns the original labels.
    pub fn dual(&self) -> LieBialgebra {
        let n = self.dim();
        let c = self.algebra.structure_constants();
        let mut c_dual = vec![vec![vec![Q::zero(); n]; n]; n];
        let mut d_dual = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c_dual[i][j][k] = self.d[k][i][j].clone();
                    d_dual[k][i][j] = c[i][j][k].clone();
                }
            }
        }
        let labels: Vec<String> = self
            .algebra
            .labels()
            .iter()
            .map(|l| match l.strip_suffix('~') {
                Some(base) => base.to_string(),
                None => format!("{}~", l),
            })
            .collect();
        let algebra = LieAlgebra::new(
            labels.iter().map(|s| s.to_string()).collect(),
            c_dual,
        )
        .expect("transposed cobracket tensor is antisymmetric");
        LieBialgebra {
            algebra,
            d: d_dual,
        }
    }
}

/// The cocycle bicrossed product of codimension-one data: on the basis of
/// `g1` followed by the complement generator, the bracket is
/// `[A, X] = chi(X) A`, `[X, Y] = [X, Y]_1 + lambda u(X, Y) A`, and the
/// cobracket is `delta(A) = 0`, `delta(X) = beta(X) ∧ A`.
pub fn bicrossed_product(
    data: &NPlus1Data,
    u: &QMat,
    lambda: &Q,
) -> Result<LieBialgebra, MatchedError> {
    let n = data.dim();
    let scaled = u.scale(lambda);
    if !crate::cohomology::is_cocycle(data, &scaled)? {
        return Err(MatchedError::NotCocycle);
    }
    let ambient = data.build_ambient(Some(&scaled))?;
    let mut labels = ambient.labels().to_vec();
    labels[n] = format!("{}~", labels[n]);
    let algebra = LieAlgebra::new(labels, ambient.structure_constants().clone())?;
    let mut terms = Vec::new();
    for i in 0..n {
        let b = data.beta_of(&unit(n, i));
        for (k, coeff) in b.into_iter().enumerate() {
            if !is_zero(&coeff) {
                terms.push((i, k, n, coeff));
            }
        }
    }
    LieBialgebra::from_wedge_table(algebra, &terms)
}

/// Check the two duality identities between `b` and a candidate dual `bd`
/// under the pairing `p`, where `p[i][j] = ⟨f_i, e_j⟩` pairs the basis of
/// `bd` with the basis of `b`:
/// `⟨[f,g], x⟩ = ⟨f ⊗ g, delta(x)⟩` and `⟨delta(f), x ⊗ y⟩ = ⟨f, [x,y]⟩`.
pub fn pairing_check(
    b: &LieBialgebra,
    bd: &LieBialgebra,
    p: &QMat,
) -> Result<PairReport, MatchedError> {
    let n = b.dim();
    if bd.dim() != n || p.nrows() != n || p.ncols() != n {
        return Err(MatchedError::ShapeMismatch {
            expected: n,
            found: bd.dim().max(p.nrows()).max(p.ncols()),
        });
    }
    if p.inverse().is_none() {
        return Err(MatchedError::SingularMap);
    }
    let c = b.algebra.structure_constants();
    let d = &b.d;
    let c_dual = bd.algebra.structure_constants();
    let d_dual = &bd.d;
    let mut clauses = Vec::new();

    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = Q::zero();
                for l in 0..n {
                    lhs += c_dual[i][j][l].clone() * p.get(l, k).clone();
                }
                let mut rhs = Q::zero();
                for a in 0..n {
                    for bb in 0..n {
                        rhs += p.get(i, a).clone()
                            * p.get(j, bb).clone()
                            * d[k][a][bb].clone();
                    }
                }
                if lhs != rhs {
                    bad.push(format!("({},{},{})", i, j, k));
                }
            }
        }
    }
    clauses.push(Clause {
        name: "bracket_pairing",
        ok: bad.is_empty(),
        detail: bad.join(" "),
    });

    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = Q::zero();
                for a in 0..n {
                    for bb in 0..n {
                        lhs += d_dual[i][a][bb].clone()
                            * p.get(a, j).clone()
                            * p.get(bb, k).clone();
                    }
                }
                let mut rhs = Q::zero();
                for l in 0..n {
                    rhs += c[j][k][l].clone() * p.get(i, l).clone();
                }
                if lhs != rhs {
                    bad.push(format!("({},{},{})", i, j, k));
                }
            }
        }
    }
    clauses.push(Clause {
        name: "cobracket_pairing",
        ok: bad.is_empty(),
        detail: bad.join(" "),
    });

    Ok(PairReport { clauses })
}

/// True if the linear map `phi` (columns = basis images) intertwines both
/// the brackets and the cobrackets of `a` and `b`.
pub fn is_bialgebra_isomorphism(
    a: &LieBialgebra,
    b: &LieBialgebra,
    phi: &QMat,
) -> Result<bool, MatchedError> {
    let n = a.dim();
    if b.dim() != n || phi.nrows() != n || phi.ncols() != n {
        return Err(MatchedError::ShapeMismatch {
            expected: n,
            found: b.dim().max(phi.nrows()).max(phi.ncols()),
        });
    }
    if phi.inverse().is_none() {
        return Err(MatchedError::SingularMap);
    }
    if !crate::algebra::intertwines_brackets(&a.algebra, &b.algebra, phi)? {
        return Ok(false);
    }
    for i in 0..n {
        // (phi ⊗ phi) delta_a(e_i) = delta_b(phi e_i), as coefficient grids.
        let lhs = {
            let mut m = QMat::zeros(n, n);
            for p in 0..n {
                for q in 0..n {
                    if is_zero(&a.d[i][p][q]) {
                        continue;
                    }
                    for x in 0..n {
                        for y in 0..n {
                            let cur = m.get(x, y).clone();
                            m.set(
                                x,
                                y,
                                cur + a.d[i][p][q].clone()
                                    * phi.get(x, p).clone()
                                    * phi.get(y, q).clone(),
                            );
                        }
                    }
                }
            }
            m
        };
        let rhs = b.cobracket_of(&phi.mul_vec(&unit(n, i))?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search for a bialgebra isomorphism of the signed-scaled-permutation form
/// `e_i ↦ s_i e_{pi(i)}`, with scalings drawn from ±1, ±2, ±1/2 and ratios
/// of nonzero structure constants of both sides. Returns the first match in
/// a deterministic order, or None.
pub fn find_isomorphism(a: &LieBialgebra, b: &LieBialgebra) -> Option<QMat> {
    let n = a.dim();
    if b.dim() != n {
        return None;
    }
    let scalings = candidate_scalings(a, b);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut result = None;
    permute(&mut perm, 0, &mut |p| {
        if result.is_some() {
            return;
        }
        let mut choice = vec![0usize; n];
        loop {
            let mut phi = QMat::zeros(n, n);
            for (i, &ci) in choice.iter().enumerate() {
                phi.set(p[i], i, scalings[ci].clone());
            }
            if is_bialgebra_isomorphism(a, b, &phi).unwrap_or(false) {
                result = Some(phi);
                return;
            }
            // Advance the mixed-radix counter over scaling choices.
            let mut pos = 0;
            loop {
                if pos == n {
                    return;
                }
                choice[pos] += 1;
                if choice[pos] < scalings.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    });
    result
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn candidate_scalings(a: &LieBialgebra, b: &LieBialgebra) -> Vec<Q> {
    use crate::scalar::{q, qi};
    let mut magnitudes: Vec<Q> = vec![qi(1), qi(2), q(1, 2)];
    let mut constants = Vec::new();
    for bi in [a, b] {
        let n = bi.dim();
        let c = bi.algebra.structure_constants();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !is_zero(&c[i][j][k]) {
                        constants.push(crate::scalar::q_abs(&c[i][j][k]));
                    }
                    if !is_zero(&bi.d[i][j][k]) {
                        constants.push(crate::scalar::q_abs(&bi.d[i][j][k]));
                    }
                }
            }
        }
    }
    constants.sort();
    constants.dedup();
    for x in &constants {
        for y in &constants {
            let r = x.clone() / y.clone();
            if !magnitudes.contains(&r) {
                magnitudes.push(r);
            }
        }
    }
    magnitudes.sort();
    magnitudes.truncate(24);
    let mut out = Vec::with_capacity(magnitudes.len() * 2);
    for m in magnitudes {
        out.push(m.clone());
        out.push(-m);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::cohomology::cocycle_space;
    use crate::scalar::{q, qi};

    fn sl2_bialgebra() -> LieBialgebra {
        // Standard bialgebra on sl2: delta(H) = 0, delta(X) = H ∧ X,
        // delta(Y) = H ∧ Y.
        let alg = LieAlgebra::from_table(
            &["H", "X", "Y"],
            &[
                (0, 1, vec![qi(0), qi(2), qi(0)]),
                (0, 2, vec![qi(0), qi(0), qi(-2)]),
                (1, 2, vec![qi(1), qi(0), qi(0)]),
            ],
        )
        .unwrap();
        LieBialgebra::from_wedge_table(
            alg,
            &[(1, 0, 1, qi(1)), (2, 0, 2, qi(1))],
        )
        .unwrap()
    }

    #[test]
    fn zero_cobracket_is_always_a_bialgebra() {
        let alg = LieAlgebra::from_table(&["X", "Y"], &[(0, 1, vec![qi(0), qi(1)])]).unwrap();
        let b = LieBialgebra::with_zero_cobracket(alg);
        assert!(b.check().ok());
    }

    #[test]
    fn sl2_standard_structure_verifies() {
        let b = sl2_bialgebra();
        let report = b.check();
        assert!(report.ok(), "{}", report);
    }

    #[test]
    fn tampered_cobracket_fails_compatibility() {
        let b = sl2_bialgebra();
        // Flip the sign of delta(X).
        let mut d = b.cobracket().clone();
        d[1][0][1] = -d[1][0][1].clone();
        d[1][1][0] = -d[1][1][0].clone();
        let bad = LieBialgebra::new(b.algebra().clone(), d).unwrap();
        let report = bad.check();
        assert!(!report.ok());
        assert!(report
            .clauses
            .iter()
            .any(|c| c.name == "compatibility" && !c.ok));
    }

    #[test]
    fn dual_is_an_involution() {
        let b = sl2_bialgebra();
        let dd = b.dual().dual();
        assert_eq!(dd.algebra().structure_constants(), b.algebra().structure_constants());
        assert_eq!(dd.cobracket(), b.cobracket());
        assert_eq!(dd.algebra().labels(), b.algebra().labels());
    }

    #[test]
    fn dual_of_zero_cobracket_is_abelian_with_transposed_cobracket() {
        let alg = LieAlgebra::from_table(&["X", "Y"], &[(0, 1, vec![qi(0), qi(1)])]).unwrap();
        let b = LieBialgebra::with_zero_cobracket(alg);
        let d = b.dual();
        assert!(d.algebra().structure_constants().iter().flatten().flatten().all(is_zero));
        assert_eq!(d.cobracket()[1][0][1], qi(1));
        assert!(d.check().ok());
    }

    #[test]
    fn dual_satisfies_canonical_pairing() {
        let b = sl2_bialgebra();
        let d = b.dual();
        let report = pairing_check(&d, &b, &QMat::identity(3)).unwrap();
        assert!(report.ok(), "{}", report);
    }

    #[test]
    fn bicrossed_product_passes_axioms_on_catalog_data() {
        for spec in ["2+1/4.1", "2+1/4.2", "2+1/4.3", "2+1/1.2", "1+1/4"] {
            let e = entry(spec).unwrap();
            let cocycles = cocycle_space(&e.data).unwrap();
            let u = cocycles.first().cloned().unwrap_or_else(|| {
                QMat::zeros(e.data.dim(), e.data.dim())
            });
            for lambda in [qi(0), qi(1), q(-3, 2)] {
                let b = bicrossed_product(&e.data, &u, &lambda).unwrap();
                let report = b.check();
                assert!(report.ok(), "{} lambda={}: {}", spec, lambda, report);
            }
        }
    }

    #[test]
    fn bicrossed_product_shape() {
        // 1+1 case with unit character: [A, X] = A and delta(X) = A ∧ X in
        // the complement-last basis.
        let e = entry("1+1/4").unwrap();
        let u = QMat::zeros(1, 1);
        let b = bicrossed_product(&e.data, &u, &qi(0)).unwrap();
        assert_eq!(b.algebra().labels(), &["X".to_string(), "A~".to_string()]);
        // [e_A, e_X] = e_A:
        assert_eq!(
            b.algebra().bracket(&unit(2, 1), &unit(2, 0)).unwrap(),
            vec![qi(0), qi(1)]
        );
        // delta(X) = beta(X) ∧ A = X ∧ A:
        assert_eq!(b.cobracket()[0][0][1], qi(1));
        assert_eq!(b.cobracket()[0][1][0], qi(-1));
        assert!(b.check().ok());
    }

    #[test]
    fn isomorphism_search_finds_scaled_copies() {
        let b = sl2_bialgebra();
        // Rescale the basis by diag(1, 2, 1/2): an isomorphic copy.
        let phi = QMat::from_rows(vec![
            vec![qi(1), qi(0), qi(0)],
            vec![qi(0), qi(2), qi(0)],
            vec![qi(0), qi(0), q(1, 2)],
        ])
        .unwrap();
        let n = b.dim();
        let inv = phi.inverse().unwrap();
        // Transport the structure through phi.
        let mut c2 = vec![vec![vec![Q::zero(); n]; n]; n];
        let mut d2 = vec![vec![vec![Q::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let bij = b
                    .algebra()
                    .bracket(&phi.mul_vec(&unit(n, i)).unwrap(), &phi.mul_vec(&unit(n, j)).unwrap())
                    .unwrap();
                let back = inv.mul_vec(&bij).unwrap();
                for (k, v) in back.into_iter().enumerate() {
                    c2[i][j][k] = v;
                }
            }
        }
        for i in 0..n {
            let img = b.cobracket_of(&phi.mul_vec(&unit(n, i)).unwrap()).unwrap();
            // Pull back through phi^{-1} ⊗ phi^{-1}.
            for a in 0..n {
                for bb in 0..n {
                    let mut acc = Q::zero();
                    for x in 0..n {
                        for y in 0..n {
                            acc += inv.get(a, x).clone()
                                * inv.get(bb, y).clone()
                                * img.get(x, y).clone();
                        }
                    }
                    d2[i][a][bb] = acc;
                }
            }
        }
        let transported = LieBialgebra::new(
            LieAlgebra::new(b.algebra().labels().to_vec(), c2).unwrap(),
            d2,
        )
        .unwrap();
        assert!(transported.check().ok());
        let found = find_isomorphism(&transported, &b).expect("search should succeed");
        assert!(is_bialgebra_isomorphism(&transported, &b, &found).unwrap());
    }
}
