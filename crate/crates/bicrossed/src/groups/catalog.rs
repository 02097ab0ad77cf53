//! The catalog of matched pairs of coordinate Lie groups: direct products and
//! semidirect products for the entries with one trivial action, the affine
//! and projective factorizations for the rest, and one complex family.

use super::{
    log_uniform, normal, signed_log_uniform, CatalogIso, Chart, GroupPair, KacForms, LineModel,
};
use crate::catalog::CatalogError;
use crate::scalar::{fmt_ratio, parse_ratio, q, q_to_f64, qi, Q};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::rc::Rc;

/// Names of the group-pair entries, in catalog order.
pub const GROUP_HEADS: [&str; 18] = [
    "1.1", "1.2", "2.1", "2.2", "2.3", "2.4", "2.5", "3", "4.1", "4.2", "4.3+", "4.3-", "4.3=0",
    "1+1", "1+1/1", "1+1/2", "1+1/3", "ex3.5",
];

/// Every group-pair entry at its default parameters.
pub fn group_catalog() -> Vec<GroupPair> {
    GROUP_HEADS
        .iter()
        .map(|head| group_pair(head).expect("default group entry"))
        .collect()
}

/// Signed power `Sgn(s)|s|^d`, the branch used throughout the nonzero-scale
/// group laws.
pub fn u_pow(s: f64, d: f64) -> f64 {
    s.signum() * s.abs().powf(d)
}

/// The twisting function `(s^d - s)/(d - 1)`, extended continuously across
/// `d = 1` by `s log|s|`.
pub fn u_d(s: f64, d: f64) -> f64 {
    if (d - 1.0).abs() < 1e-9 {
        s * s.abs().ln()
    } else {
        (u_pow(s, d) - s) / (d - 1.0)
    }
}

/// Resolve `head?key=value&...` to a group pair, applying defaults and
/// validating parameter ranges.
pub fn group_pair(spec: &str) -> Result<GroupPair, CatalogError> {
    let (head_raw, query) = match spec.split_once('?') {
        Some((h, q)) => (h.trim(), Some(q)),
        None => (spec.trim(), None),
    };
    let head = GROUP_HEADS
        .iter()
        .copied()
        .find(|h| *h == head_raw)
        .ok_or_else(|| CatalogError::UnknownEntry(spec.into()))?;

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

    if head == "2.1" {
        let r = &params["r"];
        if *r < qi(-1) || *r > qi(1) {
            return Err(CatalogError::OutOfRange {
                key: "r".into(),
                value: fmt_ratio(r),
                range: "-1 <= r <= 1",
            });
        }
    }
    if head == "ex3.5" {
        let n = &params["n"];
        if !n.is_integer() || *n < qi(1) {
            return Err(CatalogError::OutOfRange {
                key: "n".into(),
                value: fmt_ratio(n),
                range: "a positive integer",
            });
        }
    }

    Ok(build_pair(head, params))
}

pub(crate) fn declared_params(head: &str) -> &'static [&'static str] {
    match head {
        "2.1" => &["r"],
        "3" => &["a"],
        "4.1" => &["d", "b"],
        "4.2" => &["d"],
        "ex3.5" => &["n"],
        _ => &[],
    }
}

fn default_params(head: &str) -> Vec<(&'static str, Q)> {
    match head {
        "2.1" => vec![("r", q(1, 2))],
        "3" => vec![("a", qi(-1))],
        "4.1" => vec![("d", qi(-1)), ("b", qi(1))],
        "4.2" => vec![("d", qi(-1))],
        "ex3.5" => vec![("n", qi(2))],
        _ => vec![],
    }
}

fn build_pair(head: &str, params: BTreeMap<String, Q>) -> GroupPair {
    match head {
        "1.1" => split_pair(
            "1.1",
            params,
            plane_chart(),
            Rc::new(|_, g| g.to_vec()),
            |_| 1.0,
            "2+1/1.1",
        ),
        "1.2" => split_pair(
            "1.2",
            params,
            affine_chart(),
            Rc::new(|_, g| g.to_vec()),
            |p| (-p[0]).exp(),
            "2+1/1.2",
        ),
        "2.1" => {
            let r = q_to_f64(&params["r"]);
            let target = format!("2+1/2.1?r={}", fmt_ratio(&params["r"]));
            split_pair(
                "2.1",
                params,
                plane_chart(),
                Rc::new(move |s, g| vec![s.exp() * g[0], (r * s).exp() * g[1]]),
                move |p| ((1.0 + r) * p[2]).exp(),
                &target,
            )
        }
        "2.2" => split_pair(
            "2.2",
            params,
            plane_chart(),
            Rc::new(|s, g| vec![s.exp() * g[0], s.exp() * (s * g[0] + g[1])]),
            |p| (2.0 * p[2]).exp(),
            "2+1/2.2",
        ),
        "2.3" => split_pair(
            "2.3",
            params,
            plane_chart(),
            Rc::new(|s, g| vec![g[0], g[1] + s * g[0]]),
            |_| 1.0,
            "2+1/2.3",
        ),
        "2.4" => split_pair(
            "2.4",
            params,
            affine_chart(),
            Rc::new(|s, g| vec![g[0], g[1] + s * (g[0].exp() - 1.0)]),
            |p| (-p[0]).exp(),
            "2+1/2.4",
        ),
        "2.5" => split_pair(
            "2.5",
            params,
            affine_chart(),
            Rc::new(|s, g| vec![g[0], s.exp() * g[1]]),
            |p| (p[2] - p[0]).exp(),
            "2+1/2.5",
        ),
        "3" => entry_three(params),
        "4.1" => entry_four_one(params),
        "4.2" => entry_four_two(params),
        "4.3+" => entry_four_three_plus(params),
        "4.3-" => entry_four_three_minus(params),
        "4.3=0" => entry_four_three_zero(params),
        "1+1" => entry_one_plus_one(params),
        "1+1/1" => split_pair(
            "1+1/1",
            params,
            additive_line(),
            Rc::new(|_, g| g.to_vec()),
            |_| 1.0,
            "1+1/1",
        ),
        "1+1/2" => split_pair(
            "1+1/2",
            params,
            additive_line(),
            Rc::new(|s, g| vec![s.exp() * g[0]]),
            |p| p[1].exp(),
            "1+1/2",
        ),
        "1+1/3" => entry_one_plus_one_three(params),
        "ex3.5" => entry_complex_family(params),
        _ => unreachable!("head validated by group_pair"),
    }
}

fn additive_line() -> Chart {
    Chart::new(
        vec![0.0],
        |a, b| vec![a[0] + b[0]],
        |a| vec![-a[0]],
        |rng| vec![normal(rng)],
        |_| 1.0,
    )
}

fn multiplicative_line(positive: bool) -> Chart {
    Chart::new(
        vec![1.0],
        |a, b| vec![a[0] * b[0]],
        |a| vec![1.0 / a[0]],
        move |rng| {
            vec![if positive {
                log_uniform(rng, 0.3, 3.0)
            } else {
                signed_log_uniform(rng)
            }]
        },
        |_| 1.0,
    )
}

fn circle_chart() -> Chart {
    Chart::new(
        vec![1.0, 0.0],
        |a, b| vec![a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]],
        |a| vec![a[0], -a[1]],
        |rng| {
            let t: f64 = rng.gen_range(-3.0..3.0);
            vec![t.cos(), t.sin()]
        },
        |_| 1.0,
    )
    .with_geometry(
        1,
        |_, t| vec![t.cos(), t.sin()],
        |p| vec![p[1].atan2(p[0])],
    )
    .with_normalize(|p| {
        let n = (p[0] * p[0] + p[1] * p[1]).sqrt();
        vec![p[0] / n, p[1] / n]
    })
}

fn plane_chart() -> Chart {
    Chart::new(
        vec![0.0, 0.0],
        |a, b| vec![a[0] + b[0], a[1] + b[1]],
        |a| vec![-a[0], -a[1]],
        |rng| vec![normal(rng), normal(rng)],
        |_| 1.0,
    )
}

fn affine_chart() -> Chart {
    Chart::new(
        vec![0.0, 0.0],
        |a, b| vec![a[0] + b[0], a[1] + a[0].exp() * b[1]],
        |a| vec![-a[0], -a[1] * (-a[0]).exp()],
        |rng| vec![normal(rng), normal(rng)],
        |p| (-p[0]).exp(),
    )
}

/// The chart `(a, x)` with law `(a, x)(a', x') = (aa', x + a^d x')`, over
/// either the positive half-line or the punctured line in `a`.
fn scaled_translation_chart(positive: bool, d: f64) -> Chart {
    Chart::new(
        vec![1.0, 0.0],
        move |p, q| vec![p[0] * q[0], p[1] + u_pow(p[0], d) * q[1]],
        move |p| vec![1.0 / p[0], -p[1] * u_pow(p[0], -d)],
        move |rng| {
            vec![
                if positive {
                    log_uniform(rng, 0.3, 3.0)
                } else {
                    signed_log_uniform(rng)
                },
                normal(rng),
            ]
        },
        move |p| p[0].abs().powf(-d),
    )
}

fn mat_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn mat_inv(m: &[f64]) -> Vec<f64> {
    let det = m[0] * m[3] - m[1] * m[2];
    vec![m[3] / det, -m[1] / det, -m[2] / det, m[0] / det]
}

/// Chart on 2x2 matrices of determinant plus or minus one, taken modulo an
/// overall sign; tangent directions are the traceless elementary matrices.
fn matrix_chart(sample: impl Fn(&mut ChaCha8Rng) -> Vec<f64> + 'static) -> Chart {
    Chart::new(
        vec![1.0, 0.0, 0.0, 1.0],
        |a, b| mat_mul(a, b),
        |m| mat_inv(m),
        sample,
        |_| 1.0,
    )
    .with_geometry(
        3,
        |i, t| {
            let mut m = vec![1.0, 0.0, 0.0, 1.0];
            match i {
                0 => {
                    m[0] += t;
                    m[3] -= t;
                }
                1 => m[1] += t,
                _ => m[2] += t,
            }
            m
        },
        |m| vec![(m[0] - m[3]) / 2.0, m[1], m[2]],
    )
    .with_projective_distance()
}

/// Semidirect product `G1 x| R` for a trivial first action: the line acts on
/// the first factor through the one-parameter automorphism group `flow`.
fn split_pair(
    name: &str,
    params: BTreeMap<String, Q>,
    g1: Chart,
    flow: Rc<dyn Fn(f64, &[f64]) -> Vec<f64>>,
    delta_g: impl Fn(&[f64]) -> f64 + 'static,
    algebra_entry: &str,
) -> GroupPair {
    let n = g1.dim();
    let lie_n = g1.lie_dim();
    let id1 = g1.identity().to_vec();
    let g2 = additive_line();

    let mut ambient_id = id1.clone();
    ambient_id.push(0.0);
    let g1_mul = g1.clone();
    let g1_inv = g1.clone();
    let g1_sample = g1.clone();
    let flow_mul = flow.clone();
    let flow_inv = flow.clone();
    let g = Chart::new(
        ambient_id,
        move |p, q| {
            let mut out = g1_mul.multiply(&p[..n], &flow_mul(-p[n], &q[..n]));
            out.push(p[n] + q[n]);
            out
        },
        move |p| {
            let mut out = flow_inv(p[n], &g1_inv.inverse(&p[..n]));
            out.push(-p[n]);
            out
        },
        move |rng| {
            let mut v = g1_sample.sample_point(rng);
            v.push(normal(rng));
            v
        },
        delta_g,
    );

    let embed_id = id1;
    GroupPair::new(
        name,
        params,
        g,
        g1,
        g2,
        move |gp| {
            let mut v = gp.to_vec();
            v.push(0.0);
            v
        },
        move |s| {
            let mut v = embed_id.clone();
            v.push(s[0]);
            v
        },
        |_, s| s.to_vec(),
        move |s, gp| flow(s[0], gp),
    )
    .with_g2_model(LineModel::Additive)
    .with_catalog_target(algebra_entry, CatalogIso::identity(lie_n, 1.0))
    .with_kac(KacForms {
        expected: Some(true),
        ..KacForms::default()
    })
}

fn entry_three(params: BTreeMap<String, Q>) -> GroupPair {
    let a = q_to_f64(&params["a"]);
    let target = format!("2+1/3?a={}", fmt_ratio(&params["a"]));
    let g1 = scaled_translation_chart(true, a);
    let g2 = additive_line();
    let g = Chart::new(
        vec![0.0, 1.0, 0.0],
        move |p, q| {
            vec![
                p[0] + p[1] * q[0],
                p[1] * q[1],
                p[2] + p[1].powf(a) * q[2],
            ]
        },
        move |p| vec![-p[0] / p[1], 1.0 / p[1], -p[2] * p[1].powf(-a)],
        |rng| vec![normal(rng), log_uniform(rng, 0.3, 3.0), normal(rng)],
        move |p| p[1].powf(-1.0 - a),
    );
    GroupPair::new(
        "3",
        params,
        g,
        g1,
        g2,
        |gp| vec![0.0, gp[0], gp[1]],
        |s| vec![s[0], 1.0, 0.0],
        |gp, s| vec![gp[0] * s[0]],
        |_, gp| gp.to_vec(),
    )
    .with_g2_model(LineModel::Additive)
    .with_catalog_target(&target, CatalogIso::identity(2, 1.0))
    .with_kac(KacForms {
        expected: Some(true),
        ..KacForms::default()
    })
}

fn entry_four_one(params: BTreeMap<String, Q>) -> GroupPair {
    let d = q_to_f64(&params["d"]);
    let b = q_to_f64(&params["b"]);
    let target = if params["d"] == qi(0) {
        "2+1/4.1?d=0&b=0".to_string()
    } else {
        format!(
            "2+1/4.1?d={}&b={}",
            fmt_ratio(&params["d"]),
            fmt_ratio(&params["b"])
        )
    };
    let iso = if d == 0.0 {
        CatalogIso::identity(2, -1.0)
    } else {
        CatalogIso {
            map: vec![vec![1.0, 0.0], vec![0.0, d]],
            scale: -1.0,
        }
    };
    let g1 = scaled_translation_chart(false, d);
    let g2 = multiplicative_line(false);
    let g = Chart::new(
        vec![1.0, 0.0, 0.0],
        move |p, q| {
            vec![
                p[0] * q[0],
                p[1] + p[0] * q[1],
                p[2] + u_pow(p[0], d) * q[2] + b * u_d(p[0], d) * q[1],
            ]
        },
        move |p| {
            let s = p[0];
            vec![
                1.0 / s,
                -p[1] / s,
                (b * u_d(s, d) * p[1] / s - p[2]) * u_pow(s, -d),
            ]
        },
        |rng| vec![signed_log_uniform(rng), normal(rng), normal(rng)],
        move |p| p[0].abs().powf(-d - 1.0),
    );
    GroupPair::new(
        "4.1",
        params,
        g,
        g1,
        g2,
        move |gp| vec![gp[0], gp[0] - 1.0, gp[1] + b * u_d(gp[0], d)],
        |s| vec![s[0], 0.0, 0.0],
        |gp, s| vec![gp[0] * (s[0] - 1.0) + 1.0],
        move |s, gp| {
            let (a, x) = (gp[0], gp[1]);
            let reach = a * (s[0] - 1.0) + 1.0;
            vec![
                s[0] * a / reach,
                (x + b * (u_d(a, d) + u_d(reach, d) - u_d(a * s[0], d))) * u_pow(reach, -d),
            ]
        },
    )
    .with_g2_model(LineModel::Multiplicative)
    .with_catalog_target(&target, iso)
    .with_kac(KacForms {
        expected: Some(false),
        delta_m: Some(Rc::new(move |gp, s| {
            (gp[0] * (s[0] - 1.0) + 1.0).abs().powf(d + 1.0)
        })),
        delta_m_hat: Some(Rc::new(move |gp, s| {
            let reach = gp[0] * (s[0] - 1.0) + 1.0;
            (gp[0] * s[0] / reach).abs().powf(d - 1.0)
        })),
    })
}

fn entry_four_two(params: BTreeMap<String, Q>) -> GroupPair {
    let d = q_to_f64(&params["d"]);
    let target = format!("2+1/4.2?d={}", fmt_ratio(&params["d"]));
    let g1 = scaled_translation_chart(true, d);
    let g2 = additive_line();
    let g = Chart::new(
        vec![1.0, 0.0, 0.0],
        move |p, q| {
            vec![
                p[0] * q[0],
                p[1] + p[0] * q[1],
                p[2] + p[0].powf(d) * q[2] + u_d(p[0], d) * q[1],
            ]
        },
        move |p| {
            let s = p[0];
            vec![
                1.0 / s,
                -p[1] / s,
                (u_d(s, d) * p[1] / s - p[2]) * s.powf(-d),
            ]
        },
        |rng| vec![log_uniform(rng, 0.3, 3.0), normal(rng), normal(rng)],
        move |p| p[0].powf(-d - 1.0),
    );
    GroupPair::new(
        "4.2",
        params,
        g,
        g1,
        g2,
        |gp| vec![gp[0], 0.0, gp[1]],
        |s| vec![1.0, s[0], 0.0],
        |gp, s| vec![gp[0] * s[0]],
        move |s, gp| vec![gp[0], gp[1] + u_d(gp[0], d) * s[0]],
    )
    .with_g2_model(LineModel::Additive)
    .with_catalog_target(&target, CatalogIso::identity(2, 1.0))
    .with_kac(KacForms {
        expected: Some(true),
        delta_m: Some(Rc::new(|_, _| 1.0)),
        delta_m_hat: Some(Rc::new(move |gp, _| gp[0].powf(d - 1.0))),
    })
}

fn signed_sqrt(s: f64) -> f64 {
    s.signum() * s.abs().sqrt()
}

fn embed_first_plus(a: f64, x: f64) -> Vec<f64> {
    let r = a.abs().sqrt();
    vec![1.0 / r, 0.0, 2.0 * x / r, signed_sqrt(a)]
}

fn embed_second_plus(s: f64) -> Vec<f64> {
    let r = s.abs().sqrt();
    vec![r, 0.5 * (r - 1.0 / signed_sqrt(s)), 0.0, 1.0 / signed_sqrt(s)]
}

fn entry_four_three_plus(params: BTreeMap<String, Q>) -> GroupPair {
    let g1 = scaled_translation_chart(false, 1.0);
    let g2 = multiplicative_line(false);
    let g = matrix_chart(|rng| {
        let a = signed_log_uniform(rng);
        let x = normal(rng);
        let s = signed_log_uniform(rng);
        mat_mul(&embed_first_plus(a, x), &embed_second_plus(s))
    });
    GroupPair::new(
        "4.3+",
        params,
        g,
        g1,
        g2,
        |gp| embed_first_plus(gp[0], gp[1]),
        |s| embed_second_plus(s[0]),
        |gp, s| {
            let (a, x) = (gp[0], gp[1]);
            vec![((x + 1.0) * s[0] + a - x - 1.0) / (x * s[0] + a - x)]
        },
        |s, gp| {
            let (a, x) = (gp[0], gp[1]);
            let p = (x + 1.0) * s[0] + a - x - 1.0;
            let q = x * s[0] + a - x;
            vec![p * q / (a * s[0]), x * p / a]
        },
    )
    .with_g2_model(LineModel::Multiplicative)
    .with_catalog_target(
        "2+1/4.3?a=4",
        CatalogIso {
            map: vec![vec![-1.0, 0.0], vec![-0.5, -0.25]],
            scale: 2.0,
        },
    )
    .with_kac(KacForms {
        expected: Some(false),
        delta_m: Some(Rc::new(|_, _| 1.0)),
        delta_m_hat: None,
    })
}

fn embed_first_minus(a: f64, x: f64) -> Vec<f64> {
    let r = a.sqrt();
    vec![1.0 / r, 0.0, x / r, r]
}

fn embed_second_minus(c: f64, s: f64) -> Vec<f64> {
    let h = s.atan2(c) / 2.0;
    vec![h.cos(), h.sin(), -h.sin(), h.cos()]
}

fn entry_four_three_minus(params: BTreeMap<String, Q>) -> GroupPair {
    let g1 = scaled_translation_chart(true, 1.0);
    let g2 = circle_chart();
    let g = matrix_chart(|rng| {
        let a = log_uniform(rng, 0.3, 3.0);
        let x = normal(rng);
        let t: f64 = rng.gen_range(-3.0..3.0);
        mat_mul(&embed_first_minus(a, x), &embed_second_minus(t.cos(), t.sin()))
    });
    GroupPair::new(
        "4.3-",
        params,
        g,
        g1,
        g2,
        |gp| embed_first_minus(gp[0], gp[1]),
        |s| embed_second_minus(s[0], s[1]),
        |gp, s| {
            let (a, x) = (gp[0], gp[1]);
            let (c, sn) = (s[0], s[1]);
            let den = (x * x + a * a + 1.0) + (a * a - x * x - 1.0) * c + 2.0 * a * x * sn;
            vec![
                ((a * a + x * x - 1.0) + (a * a - x * x + 1.0) * c + 2.0 * a * x * sn) / den,
                (2.0 * x - 2.0 * x * c + 2.0 * a * sn) / den,
            ]
        },
        |s, gp| {
            let (a, x) = (gp[0], gp[1]);
            let (c, sn) = (s[0], s[1]);
            vec![
                ((x * x + a * a + 1.0) + (a * a - x * x - 1.0) * c + 2.0 * a * x * sn) / (2.0 * a),
                ((x * x - a * a + 1.0) * sn + 2.0 * a * x * c) / (2.0 * a),
            ]
        },
    )
    .with_g2_model(LineModel::Circle)
    .with_catalog_target(
        "2+1/4.3?a=-4",
        CatalogIso {
            map: vec![vec![-1.0, 0.0], vec![0.0, 0.5]],
            scale: -2.0,
        },
    )
    .with_kac(KacForms {
        expected: Some(false),
        delta_m: Some(Rc::new(|_, _| 1.0)),
        delta_m_hat: None,
    })
}

fn entry_four_three_zero(params: BTreeMap<String, Q>) -> GroupPair {
    let g1 = Chart::new(
        vec![1.0, 0.0],
        |p, q| vec![p[0] * q[0], p[0] * q[1] + p[1] / q[0]],
        |p| vec![1.0 / p[0], -p[1]],
        |rng| vec![log_uniform(rng, 0.3, 3.0), normal(rng)],
        |p| p[0].powf(-2.0),
    );
    let g2 = additive_line();
    let g = matrix_chart(|rng| {
        let a = log_uniform(rng, 0.3, 3.0);
        let x = normal(rng);
        let s = normal(rng);
        mat_mul(&[a, x, 0.0, 1.0 / a], &[1.0, 0.0, s, 1.0])
    });
    GroupPair::new(
        "4.3=0",
        params,
        g,
        g1,
        g2,
        |gp| vec![gp[0], gp[1], 0.0, 1.0 / gp[0]],
        |s| vec![1.0, 0.0, s[0], 1.0],
        |gp, s| vec![s[0] / (gp[0] * (gp[0] + gp[1] * s[0]))],
        |s, gp| {
            let w = gp[0] + s[0] * gp[1];
            vec![w.abs(), w.signum() * gp[1]]
        },
    )
    .with_g2_model(LineModel::Additive)
    .with_catalog_target(
        "2+1/4.3?a=0",
        CatalogIso {
            map: vec![vec![-0.5, 0.0], vec![0.0, -0.5]],
            scale: 1.0,
        },
    )
    .with_kac(KacForms {
        expected: Some(false),
        delta_m: Some(Rc::new(|_, _| 1.0)),
        delta_m_hat: None,
    })
}

fn entry_one_plus_one(params: BTreeMap<String, Q>) -> GroupPair {
    let g1 = multiplicative_line(false);
    let g2 = multiplicative_line(false);
    let g = Chart::new(
        vec![1.0, 0.0],
        |p, q| vec![p[0] * q[0], p[1] + p[0] * q[1]],
        |p| vec![1.0 / p[0], -p[1] / p[0]],
        |rng| vec![signed_log_uniform(rng), normal(rng)],
        |p| 1.0 / p[0].abs(),
    );
    GroupPair::new(
        "1+1",
        params,
        g,
        g1,
        g2,
        |gp| vec![gp[0], 0.0],
        |s| vec![s[0], s[0] - 1.0],
        |gp, s| vec![gp[0] * (s[0] - 1.0) + 1.0],
        |s, gp| vec![s[0] * gp[0] / (gp[0] * (s[0] - 1.0) + 1.0)],
    )
    .with_g2_model(LineModel::Multiplicative)
    .with_catalog_target(
        "1+1/4",
        CatalogIso {
            map: vec![vec![1.0]],
            scale: -1.0,
        },
    )
    .with_kac(KacForms {
        expected: Some(false),
        ..KacForms::default()
    })
}

fn entry_one_plus_one_three(params: BTreeMap<String, Q>) -> GroupPair {
    let g1 = multiplicative_line(false);
    let g2 = additive_line();
    let g = Chart::new(
        vec![0.0, 1.0],
        |p, q| vec![p[0] + p[1] * q[0], p[1] * q[1]],
        |p| vec![-p[0] / p[1], 1.0 / p[1]],
        |rng| vec![normal(rng), signed_log_uniform(rng)],
        |p| 1.0 / p[1].abs(),
    );
    GroupPair::new(
        "1+1/3",
        params,
        g,
        g1,
        g2,
        |gp| vec![0.0, gp[0]],
        |s| vec![s[0], 1.0],
        |gp, s| vec![gp[0] * s[0]],
        |_, gp| gp.to_vec(),
    )
    .with_g2_model(LineModel::Additive)
    .with_catalog_target("1+1/3", CatalogIso::identity(1, 1.0))
    .with_kac(KacForms {
        expected: Some(true),
        ..KacForms::default()
    })
}

fn cx_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cx_inv(a: (f64, f64)) -> (f64, f64) {
    let n = a.0 * a.0 + a.1 * a.1;
    (a.0 / n, -a.1 / n)
}

fn cx_powi(a: (f64, f64), n: i64) -> (f64, f64) {
    let mut out = (1.0, 0.0);
    for _ in 0..n {
        out = cx_mul(out, a);
    }
    out
}

fn cx_sample(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let m = log_uniform(rng, 0.3, 3.0);
    let t: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    (m * t.cos(), m * t.sin())
}

fn entry_complex_family(params: BTreeMap<String, Q>) -> GroupPair {
    let n = q_to_f64(&params["n"]).round() as i64;
    let nf = n as f64;
    let g1 = Chart::new(
        vec![1.0, 0.0, 0.0, 0.0],
        move |p, q| {
            let a = cx_mul((p[0], p[1]), (q[0], q[1]));
            let w = cx_mul(cx_powi((p[0], p[1]), n), (q[2], q[3]));
            vec![a.0, a.1, p[2] + w.0, p[3] + w.1]
        },
        move |p| {
            let ai = cx_inv((p[0], p[1]));
            let w = cx_mul(cx_inv(cx_powi((p[0], p[1]), n)), (p[2], p[3]));
            vec![ai.0, ai.1, -w.0, -w.1]
        },
        |rng| {
            let a = cx_sample(rng);
            vec![a.0, a.1, normal(rng), normal(rng)]
        },
        move |p| (p[0] * p[0] + p[1] * p[1]).powf(-nf),
    );
    let g2 = Chart::new(
        vec![1.0, 0.0],
        |p, q| {
            let v = cx_mul((p[0], p[1]), (q[0], q[1]));
            vec![v.0, v.1]
        },
        |p| {
            let v = cx_inv((p[0], p[1]));
            vec![v.0, v.1]
        },
        |rng| {
            let v = cx_sample(rng);
            vec![v.0, v.1]
        },
        |_| 1.0,
    );
    let g = Chart::new(
        vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        move |p, q| {
            let a = cx_mul((p[0], p[1]), (q[0], q[1]));
            let w = cx_mul(cx_powi((p[0], p[1]), n), (q[2], q[3]));
            let v = cx_mul((p[0], p[1]), (q[4], q[5]));
            vec![a.0, a.1, p[2] + w.0, p[3] + w.1, p[4] + v.0, p[5] + v.1]
        },
        move |p| {
            let ai = cx_inv((p[0], p[1]));
            let w = cx_mul(cx_inv(cx_powi((p[0], p[1]), n)), (p[2], p[3]));
            let v = cx_mul(ai, (p[4], p[5]));
            vec![ai.0, ai.1, -w.0, -w.1, -v.0, -v.1]
        },
        |rng| {
            let a = cx_sample(rng);
            vec![a.0, a.1, normal(rng), normal(rng), normal(rng), normal(rng)]
        },
        move |p| (p[0] * p[0] + p[1] * p[1]).powf(-nf - 1.0),
    );
    GroupPair::new(
        "ex3.5",
        params,
        g,
        g1,
        g2,
        |gp| vec![gp[0], gp[1], gp[2], gp[3], 0.0, 0.0],
        |s| vec![s[0], s[1], 0.0, 0.0, s[0] - 1.0, s[1]],
        |gp, s| {
            let cap = cx_mul((gp[0], gp[1]), (s[0] - 1.0, s[1]));
            vec![cap.0 + 1.0, cap.1]
        },
        move |s, gp| {
            let a = (gp[0], gp[1]);
            let u = (gp[2], gp[3]);
            let cap = cx_mul(a, (s[0] - 1.0, s[1]));
            let cap = (cap.0 + 1.0, cap.1);
            let a_new = cx_mul(cx_mul((s[0], s[1]), a), cx_inv(cap));
            let u_new = cx_mul(u, cx_inv(cx_powi(cap, n)));
            vec![a_new.0, a_new.1, u_new.0, u_new.1]
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lists_every_head_once() {
        let all = group_catalog();
        assert_eq!(all.len(), GROUP_HEADS.len());
        for (pair, head) in all.iter().zip(GROUP_HEADS.iter()) {
            assert_eq!(pair.name(), *head);
        }
    }

    #[test]
    fn unknown_entries_and_params_are_rejected() {
        assert!(matches!(
            group_pair("5.1"),
            Err(CatalogError::UnknownEntry(_))
        ));
        assert!(matches!(
            group_pair("4.1?q=3"),
            Err(CatalogError::UnknownParam { .. })
        ));
        assert!(matches!(
            group_pair("2.1?r=oops"),
            Err(CatalogError::BadParam { .. })
        ));
        assert!(matches!(
            group_pair("2.1?r=2"),
            Err(CatalogError::OutOfRange { .. })
        ));
        assert!(matches!(
            group_pair("ex3.5?n=1/2"),
            Err(CatalogError::OutOfRange { .. })
        ));
        assert!(matches!(
            group_pair("ex3.5?n=0"),
            Err(CatalogError::OutOfRange { .. })
        ));
    }

    #[test]
    fn parameter_defaults_round_trip_through_full_name() {
        assert_eq!(group_pair("4.1").unwrap().full_name(), "4.1?b=1&d=-1");
        assert_eq!(group_pair("2.1?r=-1").unwrap().full_name(), "2.1?r=-1");
        assert_eq!(group_pair("1+1").unwrap().full_name(), "1+1");
    }

    #[test]
    fn twisting_function_is_continuous_across_the_logarithmic_branch() {
        for s in [0.25_f64, 0.5, 2.0, 3.0, -0.5, -2.0] {
            let reference = s * s.abs().ln();
            for d in [1.0 - 1e-6, 1.0 + 1e-6] {
                assert!((u_d(s, d) - reference).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn twisting_function_satisfies_the_multiplicative_cocycle_rule() {
        for d in [-1.0_f64, -0.5, 0.0, 2.0, 3.5] {
            for (a, ap) in [(0.7_f64, 1.9_f64), (-1.3, 0.4), (2.2, -0.8), (-0.6, -1.7)] {
                let lhs = u_d(a * ap, d);
                let rhs = ap * u_d(a, d) + u_pow(a, d) * u_d(ap, d);
                assert!(
                    (lhs - rhs).abs() < 1e-12,
                    "d={d} a={a} ap={ap}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn algebra_catalog_group_references_resolve() {
        for entry in crate::catalog::catalog() {
            if let Some(name) = &entry.group_entry {
                assert!(
                    group_pair(name).is_ok(),
                    "algebra entry {} points at missing group entry {}",
                    entry.full_name(),
                    name
                );
            }
        }
    }

    #[test]
    fn group_catalog_targets_resolve_in_the_algebra_catalog() {
        for pair in group_catalog() {
            if let Some(target) = pair.algebra_entry() {
                assert!(
                    crate::catalog::entry(target).is_ok(),
                    "group entry {} points at missing algebra entry {}",
                    pair.name(),
                    target
                );
            }
        }
    }
}
