//! The catalog of codimension-one matched pairs in total dimension two and
//! three: four pairs of the form 1+1 and eleven families of the form 2+1,
//! addressed by name with optional rational parameters.

use crate::algebra::LieAlgebra;
use crate::linalg::QMat;
use crate::matched::{MatchedError, NPlus1Data};
use crate::scalar::{fmt_ratio, parse_ratio, q, qi, Q, ScalarError};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("entry `{entry}` takes no parameter `{key}`")]
    UnknownParam { entry: String, key: String },
    #[error("malformed parameter `{text}`: {source}")]
    BadParam {
        text: String,
        source: ScalarError,
    },
    #[error("parameter {key} = {value} outside the declared range {range}")]
    OutOfRange {
        key: String,
        value: String,
        range: &'static str,
    },
    #[error(transparent)]
    Matched(#[from] MatchedError),
}

/// One catalog entry: its canonical name, effective parameters, and the
/// character/derivation data on the stated basis.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub params: BTreeMap<String, Q>,
    pub data: NPlus1Data,
    /// Name of the group catalog entry integrating this pair, when one is shipped.
    pub group_entry: Option<String>,
    /// Name of the bialgebra catalog family built on this pair, when one is shipped.
    pub bialgebra_entry: Option<String>,
}

impl CatalogEntry {
    /// Canonical name with all effective parameters spelled out.
    pub fn full_name(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let args: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{}={}", k, fmt_ratio(v)))
            .collect();
        format!("{}?{}", self.name, args.join("&"))
    }
}

/// Canonical entry names, in catalog order.
pub const HEADS: [&str; 15] = [
    "1+1/1", "1+1/2", "1+1/3", "1+1/4", "2+1/1.1", "2+1/1.2", "2+1/2.1", "2+1/2.2", "2+1/2.3",
    "2+1/2.4", "2+1/2.5", "2+1/3", "2+1/4.1", "2+1/4.2", "2+1/4.3",
];

/// All fifteen entries at their default parameters.
pub fn catalog() -> Vec<CatalogEntry> {
    HEADS
        .iter()
        .map(|h| entry(h).expect("default catalog entries are well formed"))
        .collect()
}

/// Look up an entry by name, with parameters as `name?key=value&key=value`.
/// Parameters outside an entry's declared range are rejected.
pub fn entry(spec: &str) -> Result<CatalogEntry, CatalogError> {
    entry_with(spec, false)
}

/// Like [`entry`], but optionally admitting parameters outside the declared
/// canonical ranges (the defining identities hold regardless).
pub fn entry_with(spec: &str, allow_out_of_range: bool) -> Result<CatalogEntry, CatalogError> {
    let (head_raw, query) = match spec.split_once('?') {
        Some((h, q)) => (h.trim(), Some(q)),
        None => (spec.trim(), None),
    };
    let head = normalize_head(head_raw).ok_or_else(|| CatalogError::UnknownEntry(spec.into()))?;

    let mut params = BTreeMap::new();
    if let Some(query) = query {
        for piece in query.split('&').filter(|p| !p.is_empty()) {
            let (k, v) = piece
                .split_once('=')
                .ok_or_else(|| CatalogError::BadParam {
                    text: piece.into(),
                    source: ScalarError::Empty,
                })?;
            let key = k.trim().to_string();
            if !declared_params(head).contains(&key.as_str()) {
                return Err(CatalogError::UnknownParam {
                    entry: head.into(),
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
    for (key, default) in default_params(head) {
        params.entry(key.to_string()).or_insert(default);
    }

    if !allow_out_of_range {
        if head == "2+1/2.1" {
            let r = &params["r"];
            if *r < qi(-1) || *r > qi(1) {
                return Err(CatalogError::OutOfRange {
                    key: "r".into(),
                    value: fmt_ratio(r),
                    range: "-1 <= r <= 1",
                });
            }
        }
    }

    let data = build_data(head, &params)?;
    let (group_entry, bialgebra_entry) = cross_references(head, &params);
    Ok(CatalogEntry {
        name: head.to_string(),
        params,
        data,
        group_entry,
        bialgebra_entry,
    })
}

fn normalize_head(raw: &str) -> Option<&'static str> {
    let candidate = if raw.contains('/') || raw.contains('+') {
        raw.to_string()
    } else {
        format!("2+1/{}", raw)
    };
    HEADS.iter().copied().find(|h| *h == candidate || *h == raw)
}

fn declared_params(head: &str) -> &'static [&'static str] {
    match head {
        "2+1/2.1" => &["r"],
        "2+1/3" | "2+1/4.3" => &["a"],
        "2+1/4.1" => &["d", "b"],
        "2+1/4.2" => &["d"],
        _ => &[],
    }
}

fn default_params(head: &str) -> Vec<(&'static str, Q)> {
    match head {
        "2+1/2.1" => vec![("r", q(1, 2))],
        "2+1/3" => vec![("a", qi(-1))],
        "2+1/4.1" => vec![("d", qi(-1)), ("b", qi(1))],
        "2+1/4.2" => vec![("d", qi(-1))],
        "2+1/4.3" => vec![("a", qi(-1))],
        _ => Vec::new(),
    }
}

fn build_data(head: &str, params: &BTreeMap<String, Q>) -> Result<NPlus1Data, MatchedError> {
    let zero1 = QMat::zeros(1, 1);
    let zero2 = QMat::zeros(2, 2);
    match head {
        "1+1/1" => NPlus1Data::new(LieAlgebra::abelian(&["X"]), vec![qi(0)], zero1, "A"),
        "1+1/2" => NPlus1Data::new(
            LieAlgebra::abelian(&["X"]),
            vec![qi(0)],
            QMat::identity(1),
            "A",
        ),
        "1+1/3" => NPlus1Data::new(LieAlgebra::abelian(&["X"]), vec![qi(1)], zero1, "A"),
        "1+1/4" => NPlus1Data::new(
            LieAlgebra::abelian(&["X"]),
            vec![qi(1)],
            QMat::identity(1),
            "A",
        ),
        "2+1/1.1" => NPlus1Data::new(
            LieAlgebra::abelian(&["X", "Y"]),
            vec![qi(0), qi(0)],
            zero2,
            "A",
        ),
        "2+1/1.2" => NPlus1Data::new(solvable(qi(1))?, vec![qi(0), qi(0)], zero2, "A"),
        "2+1/2.1" => {
            let r = params["r"].clone();
            NPlus1Data::new(
                LieAlgebra::abelian(&["X", "Y"]),
                vec![qi(0), qi(0)],
                rows2(qi(1), qi(0), qi(0), r),
                "A",
            )
        }
        "2+1/2.2" => NPlus1Data::new(
            LieAlgebra::abelian(&["X", "Y"]),
            vec![qi(0), qi(0)],
            rows2(qi(1), qi(0), qi(1), qi(1)),
            "A",
        ),
        "2+1/2.3" => NPlus1Data::new(
            LieAlgebra::abelian(&["X", "Y"]),
            vec![qi(0), qi(0)],
            rows2(qi(0), qi(0), qi(1), qi(0)),
            "A",
        ),
        "2+1/2.4" => NPlus1Data::new(
            solvable(qi(1))?,
            vec![qi(0), qi(0)],
            rows2(qi(0), qi(0), qi(1), qi(0)),
            "A",
        ),
        "2+1/2.5" => NPlus1Data::new(
            solvable(qi(1))?,
            vec![qi(0), qi(0)],
            rows2(qi(0), qi(0), qi(0), qi(1)),
            "A",
        ),
        "2+1/3" => {
            let a = params["a"].clone();
            NPlus1Data::new(solvable(a)?, vec![qi(1), qi(0)], zero2, "A")
        }
        "2+1/4.1" => {
            let d = params["d"].clone();
            let b = params["b"].clone();
            NPlus1Data::new(
                solvable(d.clone())?,
                vec![qi(1), qi(0)],
                rows2(qi(1), qi(0), b, d),
                "A",
            )
        }
        "2+1/4.2" => {
            let d = params["d"].clone();
            NPlus1Data::new(
                solvable(d)?,
                vec![qi(1), qi(0)],
                rows2(qi(0), qi(0), qi(1), qi(0)),
                "A",
            )
        }
        "2+1/4.3" => {
            let a = params["a"].clone();
            NPlus1Data::new(
                solvable(qi(-1))?,
                vec![qi(1), qi(0)],
                rows2(qi(0), qi(1), a, qi(0)),
                "A",
            )
        }
        _ => unreachable!("normalize_head admits only known heads"),
    }
}

/// The two-dimensional algebra with `[X, Y] = c Y` on basis (X, Y).
fn solvable(c: Q) -> Result<LieAlgebra, MatchedError> {
    Ok(LieAlgebra::from_table(
        &["X", "Y"],
        &[(0, 1, vec![Q::zero(), c])],
    )?)
}

fn rows2(a: Q, b: Q, c: Q, d: Q) -> QMat {
    QMat::from_rows(vec![vec![a, b], vec![c, d]]).expect("fixed 2x2 shape")
}

fn cross_references(
    head: &str,
    params: &BTreeMap<String, Q>,
) -> (Option<String>, Option<String>) {
    match head {
        "1+1/1" | "1+1/2" | "1+1/3" => (Some(head.to_string()), None),
        "1+1/4" => (Some("1+1".into()), Some("1+1".into())),
        "2+1/1.1" => (Some("1.1".into()), None),
        "2+1/1.2" => (Some("1.2".into()), None),
        "2+1/2.1" => (Some("2.1".into()), None),
        "2+1/2.2" => (Some("2.2".into()), None),
        "2+1/2.3" => (Some("2.3".into()), None),
        "2+1/2.4" => (Some("2.4".into()), None),
        "2+1/2.5" => (Some("2.5".into()), None),
        "2+1/3" => (Some("3".into()), None),
        "2+1/4.1" => (Some("4.1".into()), Some("4.1".into())),
        "2+1/4.2" => (Some("4.2".into()), Some("4.2".into())),
        "2+1/4.3" => {
            let a = &params["a"];
            let tag = if a.is_zero() {
                "4.3=0"
            } else if *a > Q::zero() {
                "4.3+"
            } else {
                "4.3-"
            };
            (Some(tag.into()), Some(tag.into()))
        }
        _ => (None, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matched::{extract_chi_beta, trichotomy, Trichotomy};
    use proptest::prelude::*;

    #[test]
    fn all_default_entries_are_matched_pairs() {
        for e in catalog() {
            let report = e.data.check().unwrap();
            assert!(report.ok(), "{}: {}", e.name, report);
            let mp = e.data.matched_pair().unwrap();
            assert!(mp.check().unwrap().ok(), "{}", e.name);
            assert!(mp.ambient().check_jacobi().ok(), "{}", e.name);
        }
    }

    #[test]
    fn extraction_round_trips_every_entry() {
        for e in catalog() {
            let mp = e.data.matched_pair().unwrap();
            let back = extract_chi_beta(&mp).unwrap();
            assert_eq!(back.chi, e.data.chi, "{}", e.name);
            assert_eq!(back.beta, e.data.beta, "{}", e.name);
        }
    }

    #[test]
    fn trichotomy_matches_the_classification() {
        let expect = |name: &str, t: Trichotomy| {
            let e = entry(name).unwrap();
            assert_eq!(trichotomy(&e.data).unwrap(), t, "{}", name);
        };
        for name in ["1+1/1", "1+1/2", "2+1/1.1", "2+1/1.2", "2+1/2.1", "2+1/2.2", "2+1/2.3", "2+1/2.4", "2+1/2.5"] {
            expect(name, Trichotomy::CharZero);
        }
        for name in ["1+1/3", "1+1/4", "2+1/3", "2+1/4.1", "2+1/4.2"] {
            expect(name, Trichotomy::StableCharKernel);
        }
        expect("2+1/4.3", Trichotomy::StableJointKernel);
    }

    #[test]
    fn parameters_parse_and_default() {
        let e = entry("2+1/4.1?d=2&b=-3/2").unwrap();
        assert_eq!(e.params["d"], qi(2));
        assert_eq!(e.params["b"], q(-3, 2));
        assert_eq!(e.full_name(), "2+1/4.1?b=-3/2&d=2");

        let e = entry("2+1/4.1").unwrap();
        assert_eq!(e.params["d"], qi(-1));
        assert_eq!(e.params["b"], qi(1));

        assert!(matches!(
            entry("2+1/1.1?d=1"),
            Err(CatalogError::UnknownParam { .. })
        ));
        assert!(matches!(entry("nope"), Err(CatalogError::UnknownEntry(_))));
    }

    #[test]
    fn short_names_resolve_to_catalog_heads() {
        assert_eq!(entry("4.3").unwrap().name, "2+1/4.3");
        assert_eq!(entry("1.1").unwrap().name, "2+1/1.1");
        assert_eq!(entry("2.1?r=1").unwrap().params["r"], qi(1));
    }

    #[test]
    fn declared_range_is_enforced_unless_relaxed() {
        assert!(matches!(
            entry("2+1/2.1?r=2"),
            Err(CatalogError::OutOfRange { .. })
        ));
        let e = entry_with("2+1/2.1?r=2", true).unwrap();
        assert!(e.data.check().unwrap().ok());
    }

    #[test]
    fn cross_references_follow_parameter_sign() {
        assert_eq!(entry("2+1/4.3?a=1").unwrap().group_entry.as_deref(), Some("4.3+"));
        assert_eq!(entry("2+1/4.3?a=0").unwrap().group_entry.as_deref(), Some("4.3=0"));
        assert_eq!(entry("2+1/4.3?a=-5").unwrap().group_entry.as_deref(), Some("4.3-"));
        assert_eq!(entry("2+1/4.2").unwrap().bialgebra_entry.as_deref(), Some("4.2"));
        assert_eq!(entry("2+1/2.3").unwrap().bialgebra_entry, None);
    }

    fn small_ratio() -> impl Strategy<Value = Q> {
        (-8i64..=8, 1i64..=4).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn parametrized_families_always_satisfy_identities(
            d in small_ratio(),
            b in small_ratio(),
            a in small_ratio(),
        ) {
            for spec in [
                format!("2+1/4.1?d={}&b={}", fmt_ratio(&d), fmt_ratio(&b)),
                format!("2+1/4.2?d={}", fmt_ratio(&d)),
                format!("2+1/4.3?a={}", fmt_ratio(&a)),
                format!("2+1/3?a={}", fmt_ratio(&a)),
            ] {
                let e = entry(&spec).unwrap();
                prop_assert!(e.data.check().unwrap().ok(), "{}", spec);
                prop_assert!(e.data.matched_pair().unwrap().ambient().check_jacobi().ok(), "{}", spec);
            }
        }
    }
}
