//! Numerical verification of group matched pairs: the factorization and
//! composition identities over seeded samples, recovery of the infinitesimal
//! data by finite differences, matching against the algebra catalog, the
//! modular criterion with its closed forms, and an independent check of the
//! declared modular functions.

use super::{in_domain, Chart, GroupError, GroupPair};
use crate::numerics::fd;
use crate::scalar::{q_to_f64, qi, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

const RETRY_CAP: usize = 1000;

/// Sampling plan shared by the statistical checks.
#[derive(Debug, Clone, Copy)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            samples: 1000,
            seed: 42,
            tol: 1e-9,
        }
    }
}

impl SampleConfig {
    pub fn with_samples(samples: usize) -> Self {
        SampleConfig {
            samples,
            ..SampleConfig::default()
        }
    }
}

/// Worst residual seen for each verified identity.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub residuals: Vec<(String, f64)>,
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    pub fn ok(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, r) in &self.residuals {
            writeln!(f, "{name}: {r:.3e}")?;
        }
        Ok(())
    }
}

/// Stricter bound than `in_domain`, keeping float cancellation in composed
/// identities well under the verification tolerances.
fn moderate(points: &[&[f64]]) -> bool {
    points
        .iter()
        .all(|p| p.iter().all(|x| x.is_finite() && x.abs() < 2e3))
}

/// A point is well inside a chart's domain when both it and its inverse have
/// moderate coordinates; inverses blow up first near the domain boundary.
fn well_inside(chart: &Chart, points: &[&[f64]]) -> bool {
    points
        .iter()
        .all(|p| moderate(&[p]) && moderate(&[&chart.inverse(p)]))
}

fn with_retries<T>(
    name: &str,
    rng: &mut ChaCha8Rng,
    mut attempt: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
) -> Result<T, GroupError> {
    for _ in 0..RETRY_CAP {
        if let Some(v) = attempt(rng) {
            return Ok(v);
        }
    }
    Err(GroupError::SamplingFailed(name.to_string()))
}

fn assoc_residual(c: &Chart, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
    c.distance(
        &c.multiply(&c.multiply(x, y), z),
        &c.multiply(x, &c.multiply(y, z)),
    )
}

fn inverse_residual(c: &Chart, x: &[f64]) -> f64 {
    let xi = c.inverse(x);
    c.distance(&c.multiply(x, &xi), c.identity())
        .max(c.distance(&c.multiply(&xi, x), c.identity()))
}

/// Check the factorization law, both action composition rules, unit laws,
/// chart group axioms, and triviality of the factor intersection over seeded
/// random samples.
pub fn check_group_matched_pair(
    pair: &GroupPair,
    cfg: &SampleConfig,
) -> Result<IdentityReport, GroupError> {
    const CLAUSES: [&str; 9] = [
        "factorization",
        "alpha_composition_in_g1",
        "beta_composition_in_g1",
        "beta_composition_in_g2",
        "alpha_composition_in_g2",
        "unit_laws",
        "chart_associativity",
        "chart_inverses",
        "trivial_intersection",
    ];
    let mut acc = [0.0f64; 9];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let vals = with_retries(pair.name(), &mut rng, |rng| {
            let g = pair.first().sample_point(rng);
            let h = pair.first().sample_point(rng);
            let s = pair.second().sample_point(rng);
            let t = pair.second().sample_point(rng);
            let p = pair.ambient().sample_point(rng);
            let q = pair.ambient().sample_point(rng);
            identity_residuals(pair, &g, &h, &s, &t, &p, &q)
        })?;
        for (a, v) in acc.iter_mut().zip(vals) {
            *a = a.max(v);
        }
    }
    Ok(IdentityReport {
        residuals: CLAUSES
            .iter()
            .zip(acc)
            .map(|(n, r)| (n.to_string(), r))
            .collect(),
    })
}

fn identity_residuals(
    pair: &GroupPair,
    g: &[f64],
    h: &[f64],
    s: &[f64],
    t: &[f64],
    p: &[f64],
    q: &[f64],
) -> Option<Vec<f64>> {
    let gg = pair.ambient();
    let g1 = pair.first();
    let g2 = pair.second();
    let e1 = g1.identity().to_vec();
    let e2 = g2.identity().to_vec();

    let ig = pair.embed_first(g);
    let js = pair.embed_second(s);
    let a_gs = pair.alpha(g, s);
    let b_sg = pair.beta(s, g);

    let fact_lhs = gg.multiply(&pair.embed_second(&a_gs), &pair.embed_first(&b_sg));
    let fact_rhs = gg.multiply(&ig, &js);

    let hg = g1.multiply(h, g);
    let a1_lhs = pair.alpha(&hg, s);
    let a1_rhs = pair.alpha(h, &a_gs);

    let b1_lhs = pair.beta(s, &hg);
    let b1_rhs = g1.multiply(&pair.beta(&a_gs, h), &b_sg);

    let ts = g2.multiply(t, s);
    let b2_lhs = pair.beta(&ts, g);
    let b2_rhs = pair.beta(t, &b_sg);

    let a2_lhs = pair.alpha(g, &ts);
    let a2_rhs = g2.multiply(&pair.alpha(&b_sg, t), &a_gs);

    let ok = well_inside(
        g1,
        &[g, h, &hg, &b_sg, &b1_lhs, &b1_rhs, &b2_lhs, &b2_rhs],
    ) && well_inside(
        g2,
        &[s, t, &ts, &a_gs, &a1_lhs, &a1_rhs, &a2_lhs, &a2_rhs],
    ) && well_inside(gg, &[p, q, &ig, &js, &fact_lhs, &fact_rhs]);
    if !ok {
        return None;
    }

    let unit = g2
        .distance(&pair.alpha(g, &e2), &e2)
        .max(g2.distance(&pair.alpha(&e1, s), s))
        .max(g1.distance(&pair.beta(s, &e1), &e1))
        .max(g1.distance(&pair.beta(&e2, g), g));

    let assoc = assoc_residual(gg, p, q, &ig)
        .max(assoc_residual(g1, g, h, &b_sg))
        .max(assoc_residual(g2, s, t, &a_gs));

    let inverses = inverse_residual(gg, p)
        .max(inverse_residual(gg, q))
        .max(inverse_residual(g1, g))
        .max(inverse_residual(g1, h))
        .max(inverse_residual(g2, s))
        .max(inverse_residual(g2, t));

    let trivial = if gg.distance(&ig, &js) < 1e-6 {
        g1.distance(g, &e1).max(g2.distance(s, &e2)).min(1.0)
    } else {
        0.0
    };

    let out = vec![
        gg.distance(&fact_lhs, &fact_rhs),
        g2.distance(&a1_lhs, &a1_rhs),
        g1.distance(&b1_lhs, &b1_rhs),
        g1.distance(&b2_lhs, &b2_rhs),
        g2.distance(&a2_lhs, &a2_rhs),
        unit,
        assoc,
        inverses,
        trivial,
    ];
    if out.iter().all(|r| r.is_finite()) {
        Some(out)
    } else {
        None
    }
}

/// Infinitesimal data recovered from a group pair by finite differences:
/// structure constants of the first factor, the character `chi`, and the
/// derivation `beta`, each with a step-comparison error estimate.
#[derive(Debug, Clone)]
pub struct InfEstimate {
    pub brackets: Vec<Vec<Vec<f64>>>,
    pub chi: Vec<f64>,
    pub beta: Vec<Vec<f64>>,
    pub error_estimate: f64,
}

fn mixed_with_error(f: &dyn Fn(f64, f64) -> f64) -> (f64, f64) {
    let fine = fd::mixed_derivative(f, 0.0, 0.0);
    let outer = |u: f64| fd::derivative(&|v| f(u, v), 0.0, 2e-3);
    let coarse = fd::derivative(&outer, 0.0, 2e-3);
    (fine, (fine - coarse).abs())
}

/// Differentiate the actions and the commutator map at the identity. The
/// second factor must be a line; its single tangent direction plays the role
/// of the distinguished complement generator.
pub fn infinitesimal_data(pair: &GroupPair) -> Result<InfEstimate, GroupError> {
    let g1 = pair.first();
    let g2 = pair.second();
    if g2.lie_dim() != 1 {
        return Err(GroupError::ComplementDimension(g2.lie_dim()));
    }
    let n = g1.lie_dim();
    let mut err = 0.0f64;

    let mut chi = Vec::with_capacity(n);
    for i in 0..n {
        let f = |u: f64, t: f64| {
            let gpt = g1.basis_curve(i, u);
            let spt = g2.basis_curve(0, t);
            g2.local_coords(&g2.canonical(&pair.alpha(&gpt, &spt)))[0]
        };
        let (v, e) = mixed_with_error(&f);
        err = err.max(e);
        chi.push(v);
    }

    let mut beta = vec![vec![0.0; n]; n];
    for (i, row) in beta.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            let f = |t: f64, u: f64| {
                let spt = g2.basis_curve(0, t);
                let gpt = g1.basis_curve(i, u);
                g1.local_coords(&g1.canonical(&pair.beta(&spt, &gpt)))[k]
            };
            let (v, e) = mixed_with_error(&f);
            err = err.max(e);
            *slot = v;
        }
    }

    let mut brackets = vec![vec![vec![0.0; n]; n]; n];
    for (i, plane) in brackets.iter_mut().enumerate() {
        for (j, row) in plane.iter_mut().enumerate() {
            for (k, slot) in row.iter_mut().enumerate() {
                let f = |u: f64, v: f64| {
                    let a = g1.basis_curve(i, u);
                    let b = g1.basis_curve(j, v);
                    let fw = g1.multiply(&a, &b);
                    let bw = g1.multiply(&b, &a);
                    g1.local_coords(&g1.canonical(&g1.multiply(&fw, &g1.inverse(&bw))))[k]
                };
                let (v, e) = mixed_with_error(&f);
                err = err.max(e);
                *slot = v;
            }
        }
    }

    Ok(InfEstimate {
        brackets,
        chi,
        beta,
        error_estimate: err,
    })
}

/// Result of comparing recovered infinitesimal data against the catalog entry
/// named by the group pair, through its declared linear identification.
#[derive(Debug, Clone)]
pub struct MatchReport {
    pub target: String,
    pub residual: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Pull the catalog data through the declared identification and compare with
/// the recovered brackets, character, and derivation. The map `T` carries the
/// catalog basis to chart directions and the complement generator picks up
/// the declared scale: brackets must intertwine exactly, `chi` composes with
/// `T`, and `beta` composes with `T` up to division by the scale.
pub fn match_to_catalog(pair: &GroupPair) -> Result<MatchReport, GroupError> {
    let target = pair
        .algebra_entry()
        .ok_or_else(|| GroupError::NoCatalogTarget(pair.name().into()))?
        .to_string();
    let iso = pair
        .catalog_iso()
        .ok_or_else(|| GroupError::NoCatalogTarget(pair.name().into()))?;
    let est = infinitesimal_data(pair)?;
    let entry = crate::catalog::entry(&target)?;
    let data = &entry.data;
    let n = data.g1.dim();
    let mut residual = 0.0f64;

    for i in 0..n {
        let lhs: f64 = (0..n).map(|k| iso.map[k][i] * est.chi[k]).sum();
        residual = residual.max((lhs - q_to_f64(&data.chi[i])).abs());
    }

    for i in 0..n {
        let e_i: Vec<Q> = (0..n).map(|j| if i == j { qi(1) } else { qi(0) }).collect();
        let cat_col: Vec<f64> = data.beta_of(&e_i).iter().map(q_to_f64).collect();
        let rhs = iso.apply(&cat_col);
        for m in 0..n {
            let lhs: f64 = (0..n).map(|k| iso.map[k][i] * est.beta[k][m]).sum();
            residual = residual.max((lhs - rhs[m] / iso.scale).abs());
        }
    }

    for i in 0..n {
        for j in 0..n {
            let cat: Vec<f64> = (0..n)
                .map(|k| q_to_f64(data.g1.structure_constant(i, j, k)))
                .collect();
            let rhs = iso.apply(&cat);
            for m in 0..n {
                let mut lhs = 0.0;
                for k in 0..n {
                    for l in 0..n {
                        lhs += iso.map[k][i] * iso.map[l][j] * est.brackets[k][l][m];
                    }
                }
                residual = residual.max((lhs - rhs[m]).abs());
            }
        }
    }

    let bound = est.error_estimate;
    let ok = residual <= (10.0 * bound).max(1e-7);
    Ok(MatchReport {
        target,
        residual,
        bound,
        ok,
    })
}

/// Outcome of the modular criterion: worst residuals of the two equalities,
/// agreement of the closed-form modular elements where declared, and the
/// expected classification.
#[derive(Debug, Clone)]
pub struct KacReport {
    pub eq1_max: f64,
    pub eq2_max: f64,
    pub delta_m_residual: Option<f64>,
    pub delta_m_hat_residual: Option<f64>,
    pub passes_eq1: bool,
    pub passes_eq2: bool,
    pub expected: Option<bool>,
}

impl KacReport {
    pub fn passes(&self) -> bool {
        self.passes_eq1 && self.passes_eq2
    }

    /// Whether the sampled outcome matches the expected classification.
    pub fn agrees(&self) -> Option<bool> {
        self.expected.map(|e| e == self.passes())
    }
}

/// Evaluate both modular equalities over seeded samples:
/// `dG(i(g b^-1)) d1(g^-1 b) d2(a s^-1) = 1` with `a = alpha_g(s)` and
/// `b = beta_s(g)`, and `d1(b)/d1(g) = d2(a)/d2(s)`; compare the declared
/// closed-form modular elements against their chart evaluations.
pub fn kac_criterion(pair: &GroupPair, cfg: &SampleConfig) -> Result<KacReport, GroupError> {
    let gg = pair.ambient();
    let g1 = pair.first();
    let g2 = pair.second();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut eq1 = 0.0f64;
    let mut eq2 = 0.0f64;
    let mut dm: Option<f64> = None;
    let mut dmh: Option<f64> = None;

    for _ in 0..cfg.samples {
        let (r1, r2, c1, c2) = with_retries(pair.name(), &mut rng, |rng| {
            let g = g1.sample_point(rng);
            let s = g2.sample_point(rng);
            let a = pair.alpha(&g, &s);
            let b = pair.beta(&s, &g);
            let gb_inv = g1.multiply(&g, &g1.inverse(&b));
            let g_inv_b = g1.multiply(&g1.inverse(&g), &b);
            let as_inv = g2.multiply(&a, &g2.inverse(&s));
            if !(well_inside(g1, &[&g, &b, &gb_inv, &g_inv_b])
                && well_inside(g2, &[&s, &a, &as_inv]))
            {
                return None;
            }
            let val = gg.modular_value(&pair.embed_first(&gb_inv))
                * g1.modular_value(&g_inv_b)
                * g2.modular_value(&as_inv);
            let lhs = g1.modular_value(&b) / g1.modular_value(&g);
            let rhs = g2.modular_value(&a) / g2.modular_value(&s);
            let r1 = (val - 1.0).abs();
            let r2 = (lhs / rhs - 1.0).abs();
            let c1 = pair
                .delta_m_closed(&g, &s)
                .map(|c| (c - pair.delta_m_empirical(&g, &s)).abs());
            let c2 = pair
                .delta_m_hat_closed(&g, &s)
                .map(|c| (c - pair.delta_m_hat_empirical(&g, &s)).abs());
            let finite = r1.is_finite()
                && r2.is_finite()
                && c1.map_or(true, f64::is_finite)
                && c2.map_or(true, f64::is_finite);
            finite.then_some((r1, r2, c1, c2))
        })?;
        eq1 = eq1.max(r1);
        eq2 = eq2.max(r2);
        if let Some(c) = c1 {
            dm = Some(dm.unwrap_or(0.0).max(c));
        }
        if let Some(c) = c2 {
            dmh = Some(dmh.unwrap_or(0.0).max(c));
        }
    }

    Ok(KacReport {
        eq1_max: eq1,
        eq2_max: eq2,
        delta_m_residual: dm,
        delta_m_hat_residual: dmh,
        passes_eq1: eq1 <= cfg.tol,
        passes_eq2: eq2 <= cfg.tol,
        expected: pair.kac_expected(),
    })
}

fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut m: Vec<Vec<f64>> = m.to_vec();
    let mut sign = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() < 1e-300 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    sign * (0..n).map(|i| m[i][i]).product::<f64>()
}

/// Compare each chart's declared modular function against the reciprocal of
/// the adjoint determinant, computed by differentiating conjugation along the
/// basis curves. Returns the worst relative residual.
pub fn modular_consistency(pair: &GroupPair, cfg: &SampleConfig) -> Result<f64, GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    for chart in [pair.ambient(), pair.first(), pair.second()] {
        let n = chart.lie_dim();
        for _ in 0..cfg.samples.clamp(5, 25) {
            let p = with_retries(pair.name(), &mut rng, |rng| {
                let p = chart.sample_point(rng);
                let pi = chart.inverse(&p);
                (in_domain(&[&p, &pi])).then_some(p)
            })?;
            let pinv = chart.inverse(&p);
            let mut jac = vec![vec![0.0; n]; n];
            for i in 0..n {
                for (k, row) in jac.iter_mut().enumerate() {
                    row[i] = fd::derivative_refined(
                        &|t| {
                            let c = chart.basis_curve(i, t);
                            let conj = chart.multiply(&chart.multiply(&p, &c), &pinv);
                            chart.local_coords(&chart.canonical(&conj))[k]
                        },
                        0.0,
                    );
                }
            }
            let numeric = 1.0 / det(&jac).abs();
            let declared = chart.modular_value(&p);
            if numeric.is_finite() && declared.is_finite() {
                worst = worst.max((numeric / declared - 1.0).abs());
            }
        }
    }
    Ok(worst)
}
