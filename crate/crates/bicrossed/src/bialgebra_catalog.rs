//! Named Lie bialgebras shipped with the crate: the cocycle bicrossed
//! products built on the codimension-one matched pair families, their
//! duals, the generic two-dimensional bialgebra, and the linearizations of
//! the standard one-parameter quantum-group deformations
//! (U_q(su(2)), SU_q(2), U_q(su(1,1)), SU_q(1,1), U_q(sl(2,R)), SL_q(2,R),
//! U_mu(e(2)), E_mu(2), two self-dual families, and one isolated case).
//!
//! Transcendental constants (such as `2 log q` or `r / sin r`) enter the
//! linearized structure constants only as overall coefficients, so each is
//! exposed as an independent rational parameter.

use std::collections::BTreeMap;

use crate::algebra::LieAlgebra;
use crate::bialgebra::{bicrossed_product, LieBialgebra};
use crate::catalog::CatalogError;
use crate::linalg::QMat;
use crate::matched::{MatchedError, NPlus1Data};
use crate::scalar::{fmt_ratio, parse_ratio, qi, Q};
use num_traits::Zero;

/// Entry names in catalog order: decomposable families with their duals
/// first, then the indecomposable linearizations.
pub const BIALGEBRA_NAMES: [&str; 23] = [
    "4.1", "4.1~", "4.2", "4.2~", "4.3+", "4.3+~", "4.3=0", "4.3=0~",
    "4.3-", "4.3-~", "1+1", "2dim", "uq-su2", "suq2", "uq-su11", "suq11",
    "uq-sl2r", "slq2r", "umu-e2", "emu2", "sd1", "sd2", "isolated",
];

/// A named bialgebra with its effective parameters.
#[derive(Debug, Clone)]
pub struct BialgebraEntry {
    pub name: String,
    pub params: BTreeMap<String, Q>,
    pub bialgebra: LieBialgebra,
    /// Catalog family the dual belongs to, when it is one of the shipped
    /// families (up to a basis isomorphism and a parameter change).
    pub dual_name: Option<&'static str>,
}

impl BialgebraEntry {
    /// Canonical `name?key=value&...` form with parameters sorted by key.
    pub fn full_name(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let query: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{}={}", k, fmt_ratio(v)))
            .collect();
        format!("{}?{}", self.name, query.join("&"))
    }
}

/// All entries at their default parameters, in catalog order.
pub fn catalog_bialgebras() -> Vec<BialgebraEntry> {
    BIALGEBRA_NAMES
        .iter()
        .map(|name| bialgebra_entry(name).expect("default entries are well formed"))
        .collect()
}

/// Resolve `name` or `name?key=value&...` to a catalog bialgebra.
pub fn bialgebra_entry(spec: &str) -> Result<BialgebraEntry, CatalogError> {
    let (name_raw, query) = match spec.split_once('?') {
        Some((h, q)) => (h.trim(), Some(q)),
        None => (spec.trim(), None),
    };
    let name = BIALGEBRA_NAMES
        .iter()
        .copied()
        .find(|n| *n == name_raw)
        .ok_or_else(|| CatalogError::UnknownEntry(spec.into()))?;

    let declared = declared_params(name);
    let mut params = BTreeMap::new();
    if let Some(query) = query {
        for piece in query.split('&').filter(|p| !p.is_empty()) {
            let (k, v) = piece
                .split_once('=')
                .ok_or_else(|| CatalogError::BadParam {
                    text: piece.into(),
                    source: crate::scalar::ScalarError::Empty,
                })?;
            let key = k.trim().to_string();
            if !declared.contains(&key.as_str()) {
                return Err(CatalogError::UnknownParam {
                    entry: name.into(),
                    key,
                });
            }
            let value = parse_ratio(v.trim()).map_err(|source| CatalogError::BadParam {
                text: piece.into(),
                source,
            })?;
            params.insert(key, value);
        }
    }
    for (key, default) in default_params(name) {
        params.entry(key.to_string()).or_insert(default);
    }

    if name == "sd1" {
        let n2 = params["re_mu"].clone() * params["re_mu"].clone()
            + params["im_mu"].clone() * params["im_mu"].clone();
        if n2.is_zero() {
            return Err(CatalogError::OutOfRange {
                key: "re_mu".into(),
                value: fmt_ratio(&params["re_mu"]),
                range: "re_mu and im_mu must not both vanish",
            });
        }
    }

    let bialgebra = build(name, &params)?;
    Ok(BialgebraEntry {
        name: name.to_string(),
        params,
        bialgebra,
        dual_name: dual_family(name),
    })
}

fn declared_params(name: &str) -> &'static [&'static str] {
    match name {
        "4.1" | "4.1~" => &["d", "b", "lambda"],
        "4.2" | "4.2~" => &["d", "lambda"],
        "4.3+" | "4.3+~" | "4.3=0" | "4.3=0~" | "4.3-" | "4.3-~" => &["lambda"],
        "2dim" => &["q"],
        "uq-su2" | "uq-su11" => &["k", "m"],
        "uq-sl2r" => &["k", "r"],
        "suq2" | "suq11" => &["t", "p"],
        "slq2r" => &["r"],
        "umu-e2" | "emu2" => &["l"],
        "sd1" => &["re_mu", "im_mu", "c"],
        "sd2" => &["alpha", "beta"],
        _ => &[],
    }
}

fn default_params(name: &str) -> Vec<(&'static str, Q)> {
    match name {
        "4.1" | "4.1~" => vec![("d", qi(-1)), ("b", qi(1)), ("lambda", qi(1))],
        "4.2" | "4.2~" => vec![("d", qi(-1)), ("lambda", qi(1))],
        "4.3+" | "4.3+~" | "4.3=0" | "4.3=0~" | "4.3-" | "4.3-~" => {
            vec![("lambda", qi(1))]
        }
        "2dim" => vec![("q", qi(1))],
        "uq-su2" | "uq-su11" => vec![("k", qi(2)), ("m", qi(1))],
        "uq-sl2r" => vec![("k", qi(2)), ("r", qi(1))],
        "suq2" | "suq11" => vec![("t", qi(1)), ("p", qi(2))],
        "slq2r" => vec![("r", qi(1))],
        "umu-e2" | "emu2" => vec![("l", qi(1))],
        "sd1" => vec![("re_mu", qi(1)), ("im_mu", qi(2)), ("c", qi(5))],
        "sd2" => vec![("alpha", qi(2)), ("beta", qi(1))],
        _ => vec![],
    }
}

fn dual_family(name: &str) -> Option<&'static str> {
    match name {
        "4.1" => Some("4.1~"),
        "4.1~" => Some("4.1"),
        "4.2" => Some("4.2~"),
        "4.2~" => Some("4.2"),
        "4.3+" => Some("4.3+~"),
        "4.3+~" => Some("4.3+"),
        "4.3=0" => Some("4.3=0~"),
        "4.3=0~" => Some("4.3=0"),
        "4.3-" => Some("4.3-~"),
        "4.3-~" => Some("4.3-"),
        "1+1" => Some("1+1"),
        "2dim" => Some("2dim"),
        "uq-su2" => Some("suq2"),
        "suq2" => Some("uq-su2"),
        "uq-su11" => Some("suq11"),
        "suq11" => Some("uq-su11"),
        "uq-sl2r" => Some("slq2r"),
        "slq2r" => Some("uq-sl2r"),
        "umu-e2" => Some("emu2"),
        "emu2" => Some("umu-e2"),
        "sd1" => Some("sd1"),
        "sd2" => Some("sd2"),
        "isolated" => None,
        _ => None,
    }
}

fn build(name: &str, params: &BTreeMap<String, Q>) -> Result<LieBialgebra, MatchedError> {
    let p = |key: &str| params[key].clone();
    match name {
        "4.1" => {
            let (d, b, lambda) = (p("d"), p("b"), p("lambda"));
            let data = product_data(
                &d,
                vec![qi(1), qi(0)],
                vec![
                    vec![qi(-1), qi(0)],
                    vec![-(b.clone() * d.clone()), -d.clone()],
                ],
            )?;
            bicrossed_product(&data, &cocycle_unit(), &lambda)
        }
        "4.2" => {
            let (d, lambda) = (p("d"), p("lambda"));
            let data = product_data(
                &d,
                vec![qi(1), qi(0)],
                vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)]],
            )?;
            bicrossed_product(&data, &cocycle_unit(), &lambda)
        }
        "4.3+" => {
            let data = product_data(
                &qi(1),
                vec![qi(-1), qi(0)],
                vec![vec![qi(-1), qi(2)], vec![qi(0), qi(1)]],
            )?;
            bicrossed_product(&data, &cocycle_unit(), &p("lambda"))
        }
        "4.3=0" => {
            let data = product_data(
                &qi(2),
                vec![qi(-2), qi(0)],
                vec![vec![qi(0), qi(1)], vec![qi(0), qi(0)]],
            )?;
            bicrossed_product(&data, &cocycle_unit(), &p("lambda"))
        }
        "4.3-" => {
            let data = product_data(
                &qi(1),
                vec![qi(-1), qi(0)],
                vec![vec![qi(0), qi(1)], vec![qi(-1), qi(0)]],
            )?;
            bicrossed_product(&data, &cocycle_unit(), &p("lambda"))
        }
        "1+1" => {
            let g1 = LieAlgebra::abelian(&["X"]);
            let beta = QMat::from_rows(vec![vec![qi(-1)]])?;
            let data = NPlus1Data::new(g1, vec![qi(1)], beta, "A")?;
            bicrossed_product(&data, &QMat::zeros(1, 1), &qi(0))
        }
        "4.1~" => {
            let (d, b, lambda) = (p("d"), p("b"), p("lambda"));
            let alg = LieAlgebra::from_table(
                &["X~", "Y~", "A"],
                &[
                    (0, 2, vec![qi(-1), qi(0), qi(0)]),
                    (1, 2, vec![-(b * d.clone()), -d.clone(), qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(1, 0, 1, d), (2, 2, 0, qi(1)), (2, 0, 1, -lambda)],
            )
        }
        "4.2~" => {
            let (d, lambda) = (p("d"), p("lambda"));
            let alg = LieAlgebra::from_table(
                &["X~", "Y~", "A"],
                &[(1, 2, vec![qi(1), qi(0), qi(0)])],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(1, 0, 1, d), (2, 2, 0, qi(1)), (2, 0, 1, -lambda)],
            )
        }
        "4.3+~" => {
            let alg = LieAlgebra::from_table(
                &["X~", "Y~", "A"],
                &[
                    (0, 2, vec![qi(-1), qi(2), qi(0)]),
                    (1, 2, vec![qi(0), qi(1), qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(1, 0, 1, qi(1)), (2, 0, 2, qi(1)), (2, 0, 1, -p("lambda"))],
            )
        }
        "4.3=0~" => {
            let alg = LieAlgebra::from_table(
                &["X~", "Y~", "A"],
                &[(0, 2, vec![qi(0), qi(1), qi(0)])],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(1, 0, 1, qi(2)), (2, 2, 0, qi(-2)), (2, 1, 0, p("lambda"))],
            )
        }
        "4.3-~" => {
            let alg = LieAlgebra::from_table(
                &["X~", "Y~", "A"],
                &[
                    (0, 2, vec![qi(0), qi(1), qi(0)]),
                    (1, 2, vec![qi(-1), qi(0), qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(1, 0, 1, qi(1)), (2, 0, 2, qi(1)), (2, 0, 1, -p("lambda"))],
            )
        }
        "2dim" => {
            let alg = LieAlgebra::from_table(&["A", "X"], &[(0, 1, vec![qi(0), qi(1)])])?;
            LieBialgebra::from_wedge_table(alg, &[(1, 1, 0, p("q"))])
        }
        "uq-su2" => {
            let (k, m) = (p("k"), p("m"));
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), qi(0), qi(1)]),
                    (0, 2, vec![qi(0), qi(-1), qi(0)]),
                    (1, 2, vec![k, qi(0), qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(alg, &[(1, 0, 1, m.clone()), (2, 0, 2, m)])
        }
        "uq-su11" => {
            let (k, m) = (p("k"), p("m"));
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), qi(0), qi(-1)]),
                    (0, 2, vec![qi(0), qi(1), qi(0)]),
                    (1, 2, vec![k, qi(0), qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(alg, &[(1, 0, 1, m.clone()), (2, 0, 2, m)])
        }
        "uq-sl2r" => {
            let (k, r) = (p("k"), p("r"));
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), qi(2), qi(0)]),
                    (0, 2, vec![qi(0), qi(0), qi(-2)]),
                    (1, 2, vec![k, qi(0), qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(alg, &[(1, 0, 1, r.clone()), (2, 0, 2, r)])
        }
        "suq2" => {
            let (t, pp) = (p("t"), p("p"));
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), t.clone(), qi(0)]),
                    (0, 2, vec![qi(0), qi(0), t]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(0, 1, 2, pp), (1, 2, 0, qi(1)), (2, 0, 1, qi(1))],
            )
        }
        "suq11" => {
            let (t, pp) = (p("t"), p("p"));
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), t.clone(), qi(0)]),
                    (0, 2, vec![qi(0), qi(0), t]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(0, 2, 1, pp), (1, 2, 0, qi(1)), (2, 0, 1, qi(1))],
            )
        }
        "slq2r" => {
            let r = p("r");
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), -r.clone(), qi(0)]),
                    (0, 2, vec![qi(0), qi(0), -r]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(0, 1, 2, qi(1)), (1, 0, 1, qi(2)), (2, 2, 0, qi(2))],
            )
        }
        "umu-e2" => {
            let l = p("l");
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), qi(0), -l.clone()]),
                    (0, 2, vec![qi(0), l, qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(alg, &[(1, 0, 1, qi(2)), (2, 0, 2, qi(2))])
        }
        "emu2" => {
            let l = p("l");
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), l.clone(), qi(0)]),
                    (0, 2, vec![qi(0), qi(0), l]),
                ],
            )?;
            LieBialgebra::from_wedge_table(alg, &[(1, 2, 0, qi(2)), (2, 0, 1, qi(2))])
        }
        "sd1" => {
            let (m1, m2, c) = (p("re_mu"), p("im_mu"), p("c"));
            let n2 = m1.clone() * m1.clone() + m2.clone() * m2.clone();
            let l1 = c.clone() * m1.clone() / n2.clone();
            let l2 = c * m2.clone() / n2;
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), -m2.clone(), -m1.clone()]),
                    (0, 2, vec![qi(0), m1, -m2]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[
                    (1, 1, 0, l1.clone()),
                    (1, 2, 0, -l2.clone()),
                    (2, 1, 0, l2),
                    (2, 2, 0, l1),
                ],
            )
        }
        "sd2" => {
            let (alpha, beta) = (p("alpha"), p("beta"));
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), qi(1), qi(0)]),
                    (0, 2, vec![qi(0), qi(0), alpha.clone()]),
                ],
            )?;
            LieBialgebra::from_wedge_table(
                alg,
                &[(1, 1, 0, beta.clone()), (2, 0, 2, alpha * beta)],
            )
        }
        "isolated" => {
            let alg = LieAlgebra::from_table(
                &["H", "X", "Y"],
                &[
                    (0, 1, vec![qi(0), qi(2), qi(0)]),
                    (0, 2, vec![qi(0), qi(0), qi(-2)]),
                    (1, 2, vec![qi(1), qi(0), qi(0)]),
                ],
            )?;
            LieBialgebra::from_wedge_table(alg, &[(0, 0, 2, qi(1)), (1, 1, 2, qi(1))])
        }
        _ => unreachable!("entry names are validated before building"),
    }
}

/// Character/derivation data for the two-dimensional solvable factor
/// `[X, Y] = d Y` underlying the decomposable products.
fn product_data(d: &Q, chi: Vec<Q>, beta_rows: Vec<Vec<Q>>) -> Result<NPlus1Data, MatchedError> {
    let g1 = LieAlgebra::from_table(&["X", "Y"], &[(0, 1, vec![qi(0), d.clone()])])?;
    NPlus1Data::new(g1, chi, QMat::from_rows(beta_rows)?, "A")
}

/// The antisymmetric form with `u(X, Y) = -1`, the sign convention carried
/// by the cocycle term of every decomposable product entry.
fn cocycle_unit() -> QMat {
    QMat::from_rows(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{find_isomorphism, is_bialgebra_isomorphism, pairing_check};
    use crate::scalar::q;

    fn sample_specs(name: &str) -> Vec<String> {
        match name {
            "4.1" | "4.1~" => vec![
                format!("{name}?d=-1&b=1&lambda=1"),
                format!("{name}?d=-1&b=-3/2&lambda=2/5"),
                format!("{name}?d=2&b=1/3&lambda=-1"),
                format!("{name}?d=0&b=0&lambda=7"),
            ],
            "4.2" | "4.2~" => vec![
                format!("{name}?d=-1&lambda=1"),
                format!("{name}?d=-1&lambda=-5/3"),
                format!("{name}?d=3&lambda=1/2"),
            ],
            "4.3+" | "4.3+~" | "4.3=0" | "4.3=0~" | "4.3-" | "4.3-~" => vec![
                format!("{name}?lambda=1"),
                format!("{name}?lambda=-2/7"),
                format!("{name}?lambda=0"),
                format!("{name}?lambda=13"),
            ],
            "1+1" | "isolated" => vec![name.to_string()],
            "2dim" => vec![
                format!("{name}?q=1"),
                format!("{name}?q=-3/4"),
                format!("{name}?q=5"),
            ],
            "uq-su2" | "uq-su11" => vec![
                format!("{name}?k=2&m=1"),
                format!("{name}?k=-1/3&m=4"),
                format!("{name}?k=5&m=-2/7"),
            ],
            "uq-sl2r" => vec![
                format!("{name}?k=2&r=1"),
                format!("{name}?k=3/2&r=-2"),
                format!("{name}?k=-4&r=1/5"),
            ],
            "suq2" | "suq11" => vec![
                format!("{name}?t=1&p=2"),
                format!("{name}?t=-2/3&p=1/4"),
                format!("{name}?t=3&p=-5"),
            ],
            "slq2r" => vec![
                format!("{name}?r=1"),
                format!("{name}?r=-3/2"),
                format!("{name}?r=4"),
            ],
            "umu-e2" | "emu2" => vec![
                format!("{name}?l=1"),
                format!("{name}?l=-2/5"),
                format!("{name}?l=3"),
            ],
            "sd1" => vec![
                format!("{name}?re_mu=1&im_mu=2&c=5"),
                format!("{name}?re_mu=1&im_mu=0&c=1"),
                format!("{name}?re_mu=3&im_mu=-1&c=2"),
            ],
            "sd2" => vec![
                format!("{name}?alpha=2&beta=1"),
                format!("{name}?alpha=-1&beta=3"),
                format!("{name}?alpha=1/2&beta=-2"),
            ],
            _ => vec![name.to_string()],
        }
    }

    #[test]
    fn every_entry_satisfies_the_axioms() {
        for name in BIALGEBRA_NAMES {
            for spec in sample_specs(name) {
                let e = bialgebra_entry(&spec).unwrap();
                let report = e.bialgebra.check();
                assert!(report.ok(), "{}: {}", spec, report);
            }
        }
    }

    #[test]
    fn duals_also_satisfy_the_axioms_and_involute() {
        for name in BIALGEBRA_NAMES {
            let e = bialgebra_entry(name).unwrap();
            let d = e.bialgebra.dual();
            assert!(d.check().ok(), "dual of {}", name);
            let dd = d.dual();
            assert_eq!(
                dd.algebra().structure_constants(),
                e.bialgebra.algebra().structure_constants(),
                "{}",
                name
            );
            assert_eq!(dd.cobracket(), e.bialgebra.cobracket(), "{}", name);
            assert_eq!(dd.algebra().labels(), e.bialgebra.algebra().labels(), "{}", name);
        }
    }

    #[test]
    fn stored_duals_equal_computed_duals_exactly() {
        for (primal, stored) in [
            ("4.1?d=-1&b=1&lambda=1", "4.1~?d=-1&b=1&lambda=1"),
            ("4.1?d=2&b=1/3&lambda=-1", "4.1~?d=2&b=1/3&lambda=-1"),
            ("4.1?d=-1&b=-3/2&lambda=2/5", "4.1~?d=-1&b=-3/2&lambda=2/5"),
            ("4.2?d=-1&lambda=1", "4.2~?d=-1&lambda=1"),
            ("4.2?d=3&lambda=1/2", "4.2~?d=3&lambda=1/2"),
            ("4.3+?lambda=1", "4.3+~?lambda=1"),
            ("4.3+?lambda=-2/7", "4.3+~?lambda=-2/7"),
            ("4.3=0?lambda=1", "4.3=0~?lambda=1"),
            ("4.3=0?lambda=13", "4.3=0~?lambda=13"),
            ("4.3-?lambda=1", "4.3-~?lambda=1"),
            ("4.3-?lambda=-2/7", "4.3-~?lambda=-2/7"),
        ] {
            let d = bialgebra_entry(primal).unwrap().bialgebra.dual();
            let s = bialgebra_entry(stored).unwrap().bialgebra;
            assert_eq!(
                d.algebra().structure_constants(),
                s.algebra().structure_constants(),
                "brackets of dual({}) vs {}",
                primal,
                stored
            );
            assert_eq!(d.cobracket(), s.cobracket(), "cobrackets of dual({}) vs {}", primal, stored);
            assert_eq!(d.algebra().labels(), s.algebra().labels(), "labels of dual({})", primal);
        }
    }

    #[test]
    fn stored_duals_pass_the_canonical_pairing() {
        for name in ["4.1", "4.2", "4.3+", "4.3=0", "4.3-"] {
            let e = bialgebra_entry(name).unwrap();
            let d = bialgebra_entry(e.dual_name.unwrap()).unwrap();
            let report =
                pairing_check(&d.bialgebra, &e.bialgebra, &QMat::identity(3)).unwrap();
            assert!(report.ok(), "{}: {}", name, report);
        }
    }

    #[test]
    fn compact_discrete_duality_identifications() {
        // dual(uq-su2(k, m)) = suq2(t = m, p = k) on the nose.
        for (k, m) in [("2", "1"), ("-1/3", "4"), ("5", "-2/7")] {
            let d = bialgebra_entry(&format!("uq-su2?k={}&m={}", k, m))
                .unwrap()
                .bialgebra
                .dual();
            let s = bialgebra_entry(&format!("suq2?t={}&p={}", m, k))
                .unwrap()
                .bialgebra;
            assert_eq!(d.algebra().structure_constants(), s.algebra().structure_constants());
            assert_eq!(d.cobracket(), s.cobracket());
        }

        // dual(uq-su11(k, m)) = suq11(t = m, p = k) after swapping X and Y.
        for (k, m) in [("2", "1"), ("-1/3", "4")] {
            let d = bialgebra_entry(&format!("uq-su11?k={}&m={}", k, m))
                .unwrap()
                .bialgebra
                .dual();
            let s = bialgebra_entry(&format!("suq11?t={}&p={}", m, k))
                .unwrap()
                .bialgebra;
            let swap = QMat::from_rows(vec![
                vec![qi(1), qi(0), qi(0)],
                vec![qi(0), qi(0), qi(1)],
                vec![qi(0), qi(1), qi(0)],
            ])
            .unwrap();
            assert!(is_bialgebra_isomorphism(&d, &s, &swap).unwrap());
        }

        // dual(uq-sl2r(k, r)) = slq2r(-r) after rescaling Y by 1/k.
        for (k, r, r_dual) in [("2", "1", "-1"), ("3/2", "-2", "2"), ("-4", "1/5", "-1/5")] {
            let d = bialgebra_entry(&format!("uq-sl2r?k={}&r={}", k, r))
                .unwrap()
                .bialgebra
                .dual();
            let s = bialgebra_entry(&format!("slq2r?r={}", r_dual)).unwrap().bialgebra;
            let kq = parse_ratio(k).unwrap();
            let phi = QMat::from_rows(vec![
                vec![qi(1), qi(0), qi(0)],
                vec![qi(0), qi(1), qi(0)],
                vec![qi(0), qi(0), qi(1) / kq],
            ])
            .unwrap();
            assert!(is_bialgebra_isomorphism(&d, &s, &phi).unwrap());
        }

        // dual(umu-e2(l)) = emu2(-l) after rescaling H by -2/l.
        for (l, l_dual) in [("1", "-1"), ("-2/5", "2/5"), ("3", "-3")] {
            let d = bialgebra_entry(&format!("umu-e2?l={}", l)).unwrap().bialgebra.dual();
            let s = bialgebra_entry(&format!("emu2?l={}", l_dual)).unwrap().bialgebra;
            let lq = parse_ratio(l).unwrap();
            let phi = QMat::from_rows(vec![
                vec![qi(-2) / lq, qi(0), qi(0)],
                vec![qi(0), qi(1), qi(0)],
                vec![qi(0), qi(0), qi(1)],
            ])
            .unwrap();
            assert!(is_bialgebra_isomorphism(&d, &s, &phi).unwrap());
        }
    }

    #[test]
    fn self_dual_families_close_under_duality() {
        // sd1: the dual swaps the roles of mu and lambda = c mu / |mu|^2,
        // landing back in the family with the same c.
        for (spec, dual_spec) in [
            ("sd1?re_mu=1&im_mu=2&c=5", "sd1?re_mu=2&im_mu=1&c=5"),
            ("sd1?re_mu=1&im_mu=0&c=1", "sd1?re_mu=0&im_mu=1&c=1"),
            ("sd1?re_mu=3&im_mu=-1&c=2", "sd1?re_mu=-1/5&im_mu=3/5&c=2"),
        ] {
            let d = bialgebra_entry(spec).unwrap().bialgebra.dual();
            let s = bialgebra_entry(dual_spec).unwrap().bialgebra;
            assert_eq!(
                d.algebra().structure_constants(),
                s.algebra().structure_constants(),
                "{}",
                spec
            );
            assert_eq!(d.cobracket(), s.cobracket(), "{}", spec);
        }

        // sd2: dual(alpha, beta) = (-alpha, beta) after rescaling H by -beta.
        for (a, b, a_dual) in [("2", "1", "-2"), ("-1", "3", "1"), ("1/2", "-2", "-1/2")] {
            let d = bialgebra_entry(&format!("sd2?alpha={}&beta={}", a, b))
                .unwrap()
                .bialgebra
                .dual();
            let s = bialgebra_entry(&format!("sd2?alpha={}&beta={}", a_dual, b))
                .unwrap()
                .bialgebra;
            let bq = parse_ratio(b).unwrap();
            let phi = QMat::from_rows(vec![
                vec![-bq, qi(0), qi(0)],
                vec![qi(0), qi(1), qi(0)],
                vec![qi(0), qi(0), qi(1)],
            ])
            .unwrap();
            assert!(is_bialgebra_isomorphism(&d, &s, &phi).unwrap());
        }

        // 1+1 and 2dim: found by the generic search.
        let e = bialgebra_entry("1+1").unwrap().bialgebra;
        let found = find_isomorphism(&e.dual(), &e).expect("1+1 is self-dual");
        assert!(is_bialgebra_isomorphism(&e.dual(), &e, &found).unwrap());

        for qv in ["1", "-3/4", "5"] {
            let e = bialgebra_entry(&format!("2dim?q={}", qv)).unwrap().bialgebra;
            let qq = parse_ratio(qv).unwrap();
            let phi = QMat::from_rows(vec![vec![-qq, qi(0)], vec![qi(0), qi(1)]]).unwrap();
            assert!(is_bialgebra_isomorphism(&e.dual(), &e, &phi).unwrap());
        }
    }

    #[test]
    fn dual_of_the_isolated_entry_is_not_in_its_own_family() {
        let e = bialgebra_entry("isolated").unwrap().bialgebra;
        let d = e.dual();
        assert!(d.check().ok());
        assert!(find_isomorphism(&d, &e).is_none());
        // The dual bracket is solvable while the primal bracket is simple:
        // the derived subalgebra drops from full rank to rank two.
        assert_eq!(derived_rank(e.algebra()), 3);
        assert_eq!(derived_rank(d.algebra()), 2);
    }

    fn derived_rank(alg: &LieAlgebra) -> usize {
        let n = alg.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                rows.push(
                    alg.bracket(&crate::algebra::unit(n, i), &crate::algebra::unit(n, j))
                        .unwrap(),
                );
            }
        }
        crate::linalg::rank_of_rows(&rows)
    }

    #[test]
    fn product_constants_are_pinned() {
        let e = bialgebra_entry("4.1?d=-1&b=1&lambda=1").unwrap().bialgebra;
        assert_eq!(e.algebra().labels(), &["X", "Y", "A~"]);
        let c = e.algebra().structure_constants();
        assert_eq!(c[2][0][2], qi(1), "[A~, X] = A~");
        assert_eq!(c[0][1][1], qi(-1), "[X, Y] = -Y - lambda A~");
        assert_eq!(c[0][1][2], qi(-1));
        let d = e.cobracket();
        assert_eq!(d[0][2][0], qi(1), "delta(X) = A~ ∧ (X - Y)");
        assert_eq!(d[0][2][1], qi(-1));
        assert_eq!(d[1][2][1], qi(-1), "delta(Y) = -A~ ∧ Y");
        assert!(d[2].iter().flatten().all(|v| v.is_zero()), "delta(A~) = 0");

        let e = bialgebra_entry("4.2?d=-1&lambda=1").unwrap().bialgebra;
        let d = e.cobracket();
        assert_eq!(d[0][1][2], qi(1), "delta(X) = Y ∧ A~");
        assert!(d[1].iter().flatten().all(|v| v.is_zero()), "delta(Y) = 0");
    }

    #[test]
    fn cocycle_term_is_a_coboundary_shift_when_the_extension_group_vanishes() {
        // At d = 1 the extension group is trivial: the lambda products are
        // all isomorphic to the lambda = 0 product via X ↦ X, Y ↦ Y + rho(Y) A~.
        let data = product_data(
            &qi(1),
            vec![qi(1), qi(0)],
            vec![vec![qi(-1), qi(0)], vec![-qi(1), -qi(1)]],
        )
        .unwrap();
        let lambda = q(3, 2);
        let b0 = bicrossed_product(&data, &cocycle_unit(), &qi(0)).unwrap();
        let b1 = bicrossed_product(&data, &cocycle_unit(), &lambda).unwrap();
        let mut phi = QMat::identity(3);
        // rho solves (d + 1) rho(Y) = -lambda.
        phi.set(2, 1, -lambda / qi(2));
        assert!(is_bialgebra_isomorphism(&b0, &b1, &phi).unwrap());
    }

    #[test]
    fn matched_pair_cross_references_resolve() {
        for e in crate::catalog::catalog() {
            if let Some(name) = e.bialgebra_entry {
                assert!(bialgebra_entry(&name).is_ok(), "{}", name);
            }
        }
    }

    #[test]
    fn full_names_round_trip() {
        let e = bialgebra_entry("4.1?b=1/3&lambda=-2&d=-1").unwrap();
        assert_eq!(e.full_name(), "4.1?b=1/3&d=-1&lambda=-2");
        let again = bialgebra_entry(&e.full_name()).unwrap();
        assert_eq!(again.bialgebra, e.bialgebra);
        assert!(bialgebra_entry("4.1?z=1").is_err());
        assert!(bialgebra_entry("nope").is_err());
        assert!(bialgebra_entry("sd1?re_mu=0&im_mu=0").is_err());
    }
}
