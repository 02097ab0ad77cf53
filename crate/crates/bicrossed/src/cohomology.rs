//! Exact two-cocycle cohomology for codimension-one matched pair data: the
//! space of antisymmetric scalar cocycles, the coboundaries of linear forms,
//! and the resulting extension-group dimension.

use crate::algebra::unit;
use crate::linalg::{in_span, independent_subset, QMat};
use crate::matched::{MatchedError, NPlus1Data};
use crate::scalar::{is_zero, Q};
use num_traits::Zero;

/// Ordered index pairs `(i, j)` with `i < j`, the coordinates used to
/// vectorize antisymmetric forms.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn form_to_vec(u: &QMat) -> Vec<Q> {
    pairs(u.nrows())
        .into_iter()
        .map(|(i, j)| u.get(i, j).clone())
        .collect()
}

fn vec_to_form(n: usize, v: &[Q]) -> QMat {
    let mut m = QMat::zeros(n, n);
    for ((i, j), x) in pairs(n).into_iter().zip(v) {
        m.set(i, j, x.clone());
        m.set(j, i, -x.clone());
    }
    m
}

fn is_antisymmetric(u: &QMat) -> bool {
    let n = u.nrows();
    if u.ncols() != n {
        return false;
    }
    for i in 0..n {
        for j in i..n {
            if *u.get(i, j) != -u.get(j, i).clone() {
                return false;
            }
        }
    }
    true
}

/// Evaluate `u` on two coordinate vectors.
pub fn evaluate(u: &QMat, x: &[Q], y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            acc += xi.clone() * u.get(i, j).clone() * yj.clone();
        }
    }
    acc
}

/// Whether the antisymmetric form `u` satisfies the twisted cyclic cocycle
/// equation `u([X,Y],Z) + chi(X) u(Y,Z) + (cyclic) = 0` on all basis triples.
pub fn is_cocycle(data: &NPlus1Data, u: &QMat) -> Result<bool, MatchedError> {
    let n = data.dim();
    if u.nrows() != n || u.ncols() != n || !is_antisymmetric(u) {
        return Err(MatchedError::CocycleNotAntisymmetric);
    }
    for (a, b, c) in triples(n) {
        if !is_zero(&cocycle_defect(data, u, a, b, c)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn cocycle_defect(
    data: &NPlus1Data,
    u: &QMat,
    a: usize,
    b: usize,
    c: usize,
) -> Result<Q, MatchedError> {
    let n = data.dim();
    let mut acc = Q::zero();
    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
        let br = data.g1.bracket(&unit(n, x), &unit(n, y))?;
        acc += evaluate(u, &br, &unit(n, z));
        acc += data.chi[x].clone() * u.get(y, z).clone();
    }
    Ok(acc)
}

/// Basis of the space of antisymmetric cocycles, as antisymmetric matrices.
pub fn cocycle_space(data: &NPlus1Data) -> Result<Vec<QMat>, MatchedError> {
    let n = data.dim();
    let ps = pairs(n);
    if ps.is_empty() {
        return Ok(Vec::new());
    }
    let ts = triples(n);
    if ts.is_empty() {
        // No constraints: every antisymmetric form is a cocycle.
        return Ok((0..ps.len())
            .map(|k| vec_to_form(n, &unit(ps.len(), k)))
            .collect());
    }
    let mut rows = Vec::with_capacity(ts.len());
    for &(a, b, c) in &ts {
        let mut row = vec![Q::zero(); ps.len()];
        for k in 0..ps.len() {
            let basis_form = vec_to_form(n, &unit(ps.len(), k));
            row[k] = cocycle_defect(data, &basis_form, a, b, c)?;
        }
        rows.push(row);
    }
    let system = QMat::from_rows(rows)?;
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| vec_to_form(n, &v))
        .collect())
}

/// The coboundary of a linear form `rho` on the first factor:
/// `(X, Y) -> rho([X,Y]) + chi(X) rho(Y) − chi(Y) rho(X)`.
pub fn coboundary(data: &NPlus1Data, rho: &[Q]) -> Result<QMat, MatchedError> {
    let n = data.dim();
    if rho.len() != n {
        return Err(MatchedError::ShapeMismatch {
            expected: n,
            found: rho.len(),
        });
    }
    let eval = |v: &[Q]| -> Q {
        rho.iter()
            .zip(v)
            .fold(Q::zero(), |acc, (r, x)| acc + r.clone() * x.clone())
    };
    let mut m = QMat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let br = data.g1.bracket(&unit(n, i), &unit(n, j))?;
            let val = eval(&br) + data.chi[i].clone() * rho[j].clone()
                - data.chi[j].clone() * rho[i].clone();
            m.set(i, j, val.clone());
            m.set(j, i, -val);
        }
    }
    Ok(m)
}

/// Basis of the space of coboundaries.
pub fn coboundary_space(data: &NPlus1Data) -> Result<Vec<QMat>, MatchedError> {
    let n = data.dim();
    let mut images = Vec::with_capacity(n);
    for r in 0..n {
        images.push(form_to_vec(&coboundary(data, &unit(n, r))?));
    }
    Ok(independent_subset(&images)
        .into_iter()
        .map(|v| vec_to_form(n, &v))
        .collect())
}

/// Cocycle and coboundary bases together with the extension-group dimension
/// and a normalized representative of a nontrivial class, when one exists.
#[derive(Debug, Clone)]
pub struct CohomologyResult {
    pub cocycles: Vec<QMat>,
    pub coboundaries: Vec<QMat>,
    pub ext_dim: usize,
    pub generator: Option<QMat>,
}

/// Compute the full cohomology picture for the given data.
pub fn extension_cohomology(data: &NPlus1Data) -> Result<CohomologyResult, MatchedError> {
    let cocycles = cocycle_space(data)?;
    let coboundaries = coboundary_space(data)?;
    let ext_dim = cocycles.len() - coboundaries.len();
    let boundary_rows: Vec<Vec<Q>> = coboundaries.iter().map(form_to_vec).collect();
    let generator = cocycles
        .iter()
        .find(|u| !in_span(&boundary_rows, &form_to_vec(u)))
        .map(|u| normalize(u));
    Ok(CohomologyResult {
        cocycles,
        coboundaries,
        ext_dim,
        generator,
    })
}

/// Scale a nonzero antisymmetric form so its first nonzero upper entry,
/// scanning pairs in lexicographic order, equals one.
fn normalize(u: &QMat) -> QMat {
    for (i, j) in pairs(u.nrows()) {
        let v = u.get(i, j);
        if !is_zero(v) {
            return u.scale(&(crate::scalar::qi(1) / v.clone()));
        }
    }
    u.clone()
}

/// Dimension of the extension group: cocycles modulo coboundaries.
pub fn extension_group_dim(data: &NPlus1Data) -> Result<usize, MatchedError> {
    Ok(extension_cohomology(data)?.ext_dim)
}

/// Whether two cocycles differ by a coboundary.
pub fn cohomologous(data: &NPlus1Data, u: &QMat, v: &QMat) -> Result<bool, MatchedError> {
    let n = data.dim();
    if u.nrows() != n || v.nrows() != n || !is_antisymmetric(u) || !is_antisymmetric(v) {
        return Err(MatchedError::CocycleNotAntisymmetric);
    }
    let boundary_rows: Vec<Vec<Q>> = coboundary_space(data)?.iter().map(form_to_vec).collect();
    let diff: Vec<Q> = form_to_vec(u)
        .into_iter()
        .zip(form_to_vec(v))
        .map(|(a, b)| a - b)
        .collect();
    Ok(in_span(&boundary_rows, &diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{intertwines_brackets, LieAlgebra};
    use crate::catalog::{catalog, entry};
    use crate::scalar::{fmt_ratio, q, qi};
    use proptest::prelude::*;

    #[test]
    fn two_dimensional_first_factor_has_one_cocycle() {
        for e in catalog() {
            let n = e.data.dim();
            let cs = cocycle_space(&e.data).unwrap();
            if n == 2 {
                assert_eq!(cs.len(), 1, "{}", e.name);
            } else {
                assert_eq!(cs.len(), 0, "{}", e.name);
            }
        }
    }

    #[test]
    fn extension_dims_match_the_classification() {
        let expect = |spec: &str, dim: usize| {
            let e = entry(spec).unwrap();
            assert_eq!(extension_group_dim(&e.data).unwrap(), dim, "{}", spec);
        };
        expect("2+1/1.1", 1);
        expect("2+1/2.1?r=1/2", 1);
        expect("2+1/2.1?r=1", 1);
        expect("2+1/2.1?r=-1", 1);
        expect("2+1/2.2", 1);
        expect("2+1/2.3", 1);
        expect("2+1/3?a=-1", 1);
        expect("2+1/4.1?d=-1&b=1", 1);
        expect("2+1/4.1?d=-1&b=0", 1);
        expect("2+1/4.2?d=-1", 1);
        expect("2+1/4.3?a=1", 1);
        expect("2+1/4.3?a=0", 1);
        expect("2+1/4.3?a=-1", 1);

        expect("2+1/1.2", 0);
        expect("2+1/2.4", 0);
        expect("2+1/2.5", 0);
        expect("2+1/3?a=1", 0);
        expect("2+1/3?a=2", 0);
        expect("2+1/4.1?d=1&b=1", 0);
        expect("2+1/4.1?d=2&b=0", 0);
        expect("2+1/4.2?d=1", 0);
        for spec in ["1+1/1", "1+1/2", "1+1/3", "1+1/4"] {
            expect(spec, 0);
        }
    }

    #[test]
    fn coboundary_formula_cases() {
        // [X, Y] = -Y with chi(X) = 1: rho(-Y) + rho(Y) = 0 for every rho.
        let e = entry("2+1/4.1?d=-1&b=1").unwrap();
        assert_eq!(coboundary_space(&e.data).unwrap().len(), 0);
        let cb = coboundary(&e.data, &[qi(3), qi(-7)]).unwrap();
        assert!(cb.is_zero());

        // [X, Y] = Y with chi = 0: the coboundary of rho is rho(Y) on (X, Y).
        let e = entry("2+1/1.2").unwrap();
        assert_eq!(coboundary_space(&e.data).unwrap().len(), 1);
        let cb = coboundary(&e.data, &[qi(0), qi(5)]).unwrap();
        assert_eq!(*cb.get(0, 1), qi(5));

        let zero = coboundary(&e.data, &[qi(0), qi(0)]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn generator_is_normalized_on_first_pair() {
        let e = entry("2+1/4.3").unwrap();
        let result = extension_cohomology(&e.data).unwrap();
        assert_eq!(result.ext_dim, 1);
        let generator = result.generator.unwrap();
        assert_eq!(*generator.get(0, 1), qi(1));
        assert_eq!(*generator.get(1, 0), qi(-1));
    }

    fn heisenberg_data() -> NPlus1Data {
        let g1 = LieAlgebra::from_table(
            &["X", "Y", "Z"],
            &[(0, 1, vec![qi(0), qi(0), qi(1)])],
        )
        .unwrap();
        NPlus1Data::new(g1, vec![qi(0); 3], QMat::zeros(3, 3), "A").unwrap()
    }

    fn diagonal_solvable_data() -> NPlus1Data {
        // [X, Y] = Y, [X, Z] = Z, [Y, Z] = 0 with trivial character: the
        // cocycle equation forces u(Y, Z) = 0.
        let g1 = LieAlgebra::from_table(
            &["X", "Y", "Z"],
            &[
                (0, 1, vec![qi(0), qi(1), qi(0)]),
                (0, 2, vec![qi(0), qi(0), qi(1)]),
            ],
        )
        .unwrap();
        NPlus1Data::new(g1, vec![qi(0); 3], QMat::zeros(3, 3), "A").unwrap()
    }

    #[test]
    fn three_dimensional_first_factors() {
        let h = heisenberg_data();
        assert!(h.check().unwrap().ok());
        assert_eq!(cocycle_space(&h).unwrap().len(), 3);
        assert_eq!(coboundary_space(&h).unwrap().len(), 1);
        assert_eq!(extension_group_dim(&h).unwrap(), 2);

        let s = diagonal_solvable_data();
        assert!(s.check().unwrap().ok());
        let cs = cocycle_space(&s).unwrap();
        assert_eq!(cs.len(), 2);
        for u in &cs {
            assert!(is_zero(u.get(1, 2)));
        }
    }

    #[test]
    fn ambient_jacobi_tracks_the_cocycle_equation() {
        for data in [heisenberg_data(), diagonal_solvable_data()] {
            for u in cocycle_space(&data).unwrap() {
                let amb = data.build_ambient(Some(&u)).unwrap();
                assert!(amb.check_jacobi().ok());
            }
        }
        // A non-cocycle form on the diagonal solvable algebra breaks Jacobi.
        let s = diagonal_solvable_data();
        let mut bad = QMat::zeros(3, 3);
        bad.set(1, 2, qi(1));
        bad.set(2, 1, qi(-1));
        assert!(!is_cocycle(&s, &bad).unwrap());
        let amb = s.build_ambient(Some(&bad)).unwrap();
        assert!(!amb.check_jacobi().ok());
    }

    #[test]
    fn cohomologous_cocycles_give_isomorphic_ambients() {
        // Shift a cocycle by the coboundary of rho; the map X -> X + rho(X) A
        // carries the shifted ambient onto the original.
        let e = entry("2+1/1.2").unwrap();
        let data = &e.data;
        let u = cocycle_space(data).unwrap().remove(0);
        let rho = vec![q(2, 3), qi(-1)];
        let shifted = {
            let cb = coboundary(data, &rho).unwrap();
            let mut m = QMat::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    m.set(i, j, u.get(i, j).clone() - cb.get(i, j).clone());
                }
            }
            m
        };
        assert!(cohomologous(data, &u, &shifted).unwrap());
        let from = data.build_ambient(Some(&shifted)).unwrap();
        let to = data.build_ambient(Some(&u)).unwrap();
        let mut phi = QMat::identity(3);
        phi.set(2, 0, rho[0].clone());
        phi.set(2, 1, rho[1].clone());
        assert!(intertwines_brackets(&from, &to, &phi).unwrap());
    }

    fn small_ratio() -> impl Strategy<Value = Q> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn coboundaries_are_cocycles(
            which in 0usize..5,
            p in small_ratio(),
            b in small_ratio(),
            r0 in small_ratio(),
            r1 in small_ratio(),
        ) {
            let spec = match which {
                0 => format!("2+1/3?a={}", fmt_ratio(&p)),
                1 => format!("2+1/4.1?d={}&b={}", fmt_ratio(&p), fmt_ratio(&b)),
                2 => format!("2+1/4.2?d={}", fmt_ratio(&p)),
                3 => format!("2+1/4.3?a={}", fmt_ratio(&p)),
                _ => "2+1/2.2".to_string(),
            };
            let e = entry(&spec).unwrap();
            let cb = coboundary(&e.data, &[r0, r1]).unwrap();
            prop_assert!(is_cocycle(&e.data, &cb).unwrap());
        }

        #[test]
        fn coboundaries_of_three_dimensional_data_are_cocycles(
            r0 in small_ratio(),
            r1 in small_ratio(),
            r2 in small_ratio(),
        ) {
            for data in [heisenberg_data(), diagonal_solvable_data()] {
                let cb = coboundary(&data, &[r0.clone(), r1.clone(), r2.clone()]).unwrap();
                prop_assert!(is_cocycle(&data, &cb).unwrap());
            }
        }
    }
}
