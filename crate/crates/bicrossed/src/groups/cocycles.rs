//! One-parameter families of cocycles on the group pairs.
//!
//! Each family transports a generating function on pairs of first-factor
//! points along the flow of the second factor and integrates it from the base
//! point, in the principal-value sense when the transported integrand
//! develops poles. The resulting `A(g, h, s)` is tested against two
//! functional identities modulo `2*pi`:
//!
//! * `A(g, h, alpha_k(s)) + A(gh, k, s) = A(h, k, s) + A(g, hk, s)`
//! * `A(g, h, s) + A(beta_{alpha_h(s)}(g), beta_s(h), t) = A(g, h, ts)`
//!
//! The second identity holds for every coupling constant by a change of
//! variables along the flow. The first holds on the nose for some entries,
//! while for others the principal values jump by a fixed increment across
//! singular configurations and only couplings on a discrete lattice survive
//! the reduction modulo `2*pi`. On the entry whose second factor is a circle,
//! the integral around the full circle is a nonzero obstruction and no
//! nonzero coupling passes.

use std::f64::consts::{PI, TAU};
use std::rc::Rc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::catalog::{group_pair, u_d};
use super::verify::SampleConfig;
use super::{GroupError, GroupPair, LineModel};
use crate::catalog::CatalogError;
use crate::numerics::{fd, pv, quadrature, QuadResult};

/// Entries that carry a cocycle family, at the parameters baked into each
/// family.
pub const COCYCLE_HEADS: [&str; 10] = [
    "1.1", "2.1", "2.2", "2.3", "3", "4.1", "4.2", "4.3+", "4.3=0", "4.3-",
];

/// Lattice spacing of the couplings that survive reduction modulo `2*pi` on
/// the quantized entries: the principal values jump by `pi^2/2` per coupling
/// unit, so multiples of `4/pi` land back on `2*pi*Z`.
pub const QUANTIZATION_STEP: f64 = 4.0 / PI;

const RETRY_CAP: usize = 1000;

/// How the coupling constants of a family behave under the identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleClass {
    /// Every coupling passes; the label set is the whole line.
    FullLine,
    /// Only integer multiples of [`QUANTIZATION_STEP`] pass.
    Quantized,
    /// The circle obstruction is generically nonzero; only the zero coupling
    /// passes.
    Obstructed,
}

impl CocycleClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CocycleClass::FullLine => "full-line",
            CocycleClass::Quantized => "quantized",
            CocycleClass::Obstructed => "obstructed",
        }
    }
}

/// How to evaluate a cocycle value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Closed form when the family ships one, integration otherwise.
    Auto,
    /// Closed form only; an error when the family ships none.
    Closed,
    /// Numerical integration along the flow, principal-value where singular.
    Integral,
}

type GenFn = Rc<dyn Fn(&[f64], &[f64]) -> f64>;
type ClosedFn = Rc<dyn Fn(&[f64], &[f64], f64) -> f64>;
type SingFn = Rc<dyn Fn(&[f64], &[f64]) -> Vec<f64>>;
type DirectFn = Rc<dyn Fn(&[f64], &[f64], f64) -> f64>;

/// A one-parameter family of cocycle candidates over one group pair: the
/// generating function at coupling one, an optional closed form for the
/// integrated cocycle, an optional explicit expression for the transported
/// integrand, and the singular points of that integrand.
pub struct CocycleFamily {
    pair: GroupPair,
    model: LineModel,
    class: CocycleClass,
    generator: GenFn,
    closed: Option<ClosedFn>,
    direct: Option<DirectFn>,
    singular: SingFn,
    full_line: Option<GenFn>,
}

/// Resolve a cocycle family by its entry name. Parameters are fixed by the
/// family itself, so only bare heads are accepted.
pub fn cocycle_family(spec: &str) -> Result<CocycleFamily, CatalogError> {
    let spec = spec.trim();
    if let Some((head, query)) = spec.split_once('?') {
        let key = query
            .split('&')
            .next()
            .map(|p| p.split('=').next().unwrap_or(p).trim().to_string())
            .unwrap_or_default();
        return Err(CatalogError::UnknownParam {
            entry: head.trim().to_string(),
            key,
        });
    }
    match spec {
        "1.1" => Ok(wedge_family("1.1", 0.0)),
        "2.1" => Ok(wedge_family("2.1", 1.5)),
        "2.2" => Ok(wedge_family("2.2", 2.0)),
        "2.3" => Ok(wedge_family("2.3", 0.0)),
        "3" => Ok(scaling_log_family("3")),
        "4.2" => Ok(scaling_log_family("4.2")),
        "4.1" => Ok(twisted_scaling_family()),
        "4.3=0" => Ok(parabolic_family()),
        "4.3+" => Ok(hyperbolic_family()),
        "4.3-" => Ok(elliptic_family()),
        other => Err(CatalogError::UnknownEntry(other.to_string())),
    }
}

/// `(exp(t*s) - 1) / t`, continuous through `t = 0`.
fn exp_ratio(t: f64, s: f64) -> f64 {
    if t.abs() < 1e-12 {
        s
    } else {
        (t * s).exp_m1() / t
    }
}

/// `x * ln|x|`, extended by zero through the origin.
fn x_ln_abs(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.abs().ln()
    }
}

/// Root of the affine form `c*r + d` when the form is not degenerate.
fn affine_root(c: f64, d: f64) -> Option<f64> {
    (c.abs() > 1e-12).then(|| -d / c)
}

/// Fold a real number into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x - TAU * (x / TAU).round();
    if y <= -PI {
        y + TAU
    } else {
        y
    }
}

fn wedge(g: &[f64], h: &[f64]) -> f64 {
    g[0] * h[1] - g[1] * h[0]
}

/// Plane pairs whose flow scales the area form by `exp(tr * s)`: the wedge of
/// the two arguments generates a cocycle for every coupling.
fn wedge_family(head: &str, tr: f64) -> CocycleFamily {
    let pair = group_pair(head).expect("plane entry");
    CocycleFamily {
        pair,
        model: LineModel::Additive,
        class: CocycleClass::FullLine,
        generator: Rc::new(|g, h| wedge(g, h)),
        closed: Some(Rc::new(move |g, h, s| wedge(g, h) * exp_ratio(tr, s))),
        direct: None,
        singular: Rc::new(|_, _| Vec::new()),
        full_line: None,
    }
}

/// Scale-and-translate pairs with a positive scale coordinate; the generator
/// weighs the first translation against the logarithm of the second scale.
fn scaling_log_family(head: &str) -> CocycleFamily {
    let pair = group_pair(head).expect("scaling entry");
    let generator: GenFn = Rc::new(|g, h| g[0] * h[0] * g[1] * h[0].ln());
    let closed: ClosedFn = if head == "3" {
        Rc::new(|g, h, s| g[0] * h[0] * g[1] * h[0].ln() * s)
    } else {
        Rc::new(|g, h, s| {
            g[0] * h[0] * h[0].ln() * (g[1] * s + u_d(g[0], -1.0) * h[0] * s * s / 2.0)
        })
    };
    CocycleFamily {
        pair,
        model: LineModel::Additive,
        class: CocycleClass::FullLine,
        generator,
        closed: Some(closed),
        direct: None,
        singular: Rc::new(|_, _| Vec::new()),
        full_line: None,
    }
}

/// The signed scaling pair acting on the punctured line, at the parameters
/// where the shear is absent. The transported integrand is logarithmic, with
/// integrable singularities only, and the integral has a closed form built
/// from `x*ln|x|`.
fn twisted_scaling_family() -> CocycleFamily {
    let pair = group_pair("4.1?d=-1&b=0").expect("scaling entry");
    CocycleFamily {
        pair,
        model: LineModel::Multiplicative,
        class: CocycleClass::FullLine,
        generator: Rc::new(|g, h| g[0] * h[0] * g[1] * h[0].abs().ln()),
        closed: Some(Rc::new(|g, h, s| {
            let b = h[0];
            let reach = b * (s - 1.0) + 1.0;
            g[0] * g[1] * (x_ln_abs(b * s) - x_ln_abs(reach) - x_ln_abs(b))
        })),
        direct: None,
        singular: Rc::new(|_, h| {
            let mut pts = vec![0.0];
            pts.extend(affine_root(h[0], 1.0 - h[0]));
            pts
        }),
        full_line: None,
    }
}

/// The unipotent-complement pair: the transported integrand has one genuine
/// pole and one logarithmic point, and its principal value over the whole
/// line is a universal constant times a sign.
fn parabolic_family() -> CocycleFamily {
    let pair = group_pair("4.3=0").expect("parabolic entry");
    CocycleFamily {
        pair,
        model: LineModel::Additive,
        class: CocycleClass::Quantized,
        generator: Rc::new(|g, h| g[1] * h[0].ln() / (g[0] * h[0] * h[0])),
        closed: None,
        direct: None,
        singular: Rc::new(|g, h| {
            let (a, x) = (g[0], g[1]);
            let (b, y) = (h[0], h[1]);
            [affine_root(y, b), affine_root(a * b * y + x, a * b * b)]
                .into_iter()
                .flatten()
                .collect()
        }),
        full_line: Some(Rc::new(|g, h| {
            let (a, x) = (g[0], g[1]);
            let (b, y) = (h[0], h[1]);
            0.5 * PI * PI * ((y / x) * (a * y + x / b)).signum()
        })),
    }
}

/// The signed scaling pair acting by fractional-linear maps: the transported
/// integrand is written out explicitly as a rational prefactor against the
/// logarithm of a rational function, with one pole and three logarithmic
/// points, all affine in the integration variable.
fn hyperbolic_family() -> CocycleFamily {
    let pair = group_pair("4.3+").expect("hyperbolic entry");
    CocycleFamily {
        pair,
        model: LineModel::Multiplicative,
        class: CocycleClass::Quantized,
        generator: Rc::new(|g, h| h[1] / h[0] * g[0].abs().ln()),
        closed: None,
        direct: Some(Rc::new(|g, h, r| {
            let (a, x) = (g[0], g[1]);
            let (b, y) = (h[0], h[1]);
            let n1 = (x + a * y + 1.0) * r + a * b - x - a * y - 1.0;
            let n2 = (x + a * y) * r + a * b - x - a * y;
            let d1 = (y + 1.0) * r + b - y - 1.0;
            let d2 = y * r + b - y;
            y / d2 * ((n1 * n2) / (a * d1 * d2)).abs().ln()
        })),
        singular: Rc::new(|g, h| {
            let (a, x) = (g[0], g[1]);
            let (b, y) = (h[0], h[1]);
            [
                affine_root(x + a * y + 1.0, a * b - x - a * y - 1.0),
                affine_root(x + a * y, a * b - x - a * y),
                affine_root(y + 1.0, b - y - 1.0),
                affine_root(y, b - y),
            ]
            .into_iter()
            .flatten()
            .collect()
        }),
        full_line: None,
    }
}

/// The pair whose second factor is the circle: the same generating function
/// as the hyperbolic case, but the full turn around the circle integrates to
/// a nonzero obstruction.
fn elliptic_family() -> CocycleFamily {
    let pair = group_pair("4.3-").expect("elliptic entry");
    CocycleFamily {
        pair,
        model: LineModel::Circle,
        class: CocycleClass::Obstructed,
        generator: Rc::new(|g, h| h[1] / h[0] * g[0].ln()),
        closed: None,
        direct: None,
        singular: Rc::new(|_, _| Vec::new()),
        full_line: None,
    }
}

impl CocycleFamily {
    pub fn name(&self) -> String {
        self.pair.full_name()
    }

    pub fn pair(&self) -> &GroupPair {
        &self.pair
    }

    pub fn model(&self) -> LineModel {
        self.model
    }

    pub fn class(&self) -> CocycleClass {
        self.class
    }

    pub fn has_closed_form(&self) -> bool {
        self.closed.is_some()
    }

    /// The generating function at coupling one.
    pub fn generator_value(&self, g: &[f64], h: &[f64]) -> f64 {
        (self.generator)(g, h)
    }

    /// Whether a coupling is expected to pass the identity checks.
    pub fn expected_pass(&self, coupling: f64) -> bool {
        match self.class {
            CocycleClass::FullLine => true,
            CocycleClass::Quantized => {
                let k = coupling / QUANTIZATION_STEP;
                (k - k.round()).abs() < 1e-9
            }
            CocycleClass::Obstructed => coupling.abs() < 1e-12,
        }
    }

    /// A scan grid adapted to the family: wide and dense where every coupling
    /// passes, the lattice plus off-lattice probes where the couplings
    /// quantize.
    pub fn default_grid(&self) -> Vec<f64> {
        match self.class {
            CocycleClass::FullLine => (0..21).map(|k| (k as f64 - 10.0) / 5.0).collect(),
            CocycleClass::Quantized => vec![
                0.0,
                QUANTIZATION_STEP,
                -QUANTIZATION_STEP,
                2.0 * QUANTIZATION_STEP,
                -2.0 * QUANTIZATION_STEP,
                1.0,
                2.0,
            ],
            CocycleClass::Obstructed => vec![0.0, QUANTIZATION_STEP, 1.0],
        }
    }

    /// The transported integrand at coupling one: the generating function at
    /// the flowed pair, times the invariant weight of the line model.
    pub fn integrand_at(&self, g: &[f64], h: &[f64], r: f64) -> f64 {
        if let Some(direct) = &self.direct {
            return direct(g, h, r);
        }
        let pt = self.model.point(r);
        let sigma = self.pair.alpha(h, &pt);
        let first = self.pair.beta(&sigma, g);
        let second = self.pair.beta(&pt, h);
        (self.generator)(&first, &second) * self.model.weight(r)
    }

    /// The cocycle value `A(g, h, s)` in the coordinate of the line model.
    pub fn value(
        &self,
        coupling: f64,
        g: &[f64],
        h: &[f64],
        s: f64,
        mode: EvalMode,
    ) -> Result<QuadResult, GroupError> {
        let use_closed = match mode {
            EvalMode::Closed => true,
            EvalMode::Auto => self.closed.is_some(),
            EvalMode::Integral => false,
        };
        if use_closed {
            let closed = self
                .closed
                .as_ref()
                .ok_or_else(|| GroupError::NoClosedForm(self.name()))?;
            Ok(QuadResult {
                value: coupling * closed(g, h, s),
                error_estimate: 0.0,
            })
        } else {
            let q = self.integral_value(g, h, s);
            Ok(QuadResult {
                value: coupling * q.value,
                error_estimate: coupling.abs() * q.error_estimate,
            })
        }
    }

    /// Principal value of the transported integrand over the whole line,
    /// where the family defines one, against its closed sign formula.
    pub fn full_line_value(&self, coupling: f64, g: &[f64], h: &[f64]) -> Option<(QuadResult, f64)> {
        let closed = self.full_line.as_ref()?;
        let mut pts: Vec<f64> = (self.singular)(g, h);
        pts.retain(|r| r.is_finite());
        let f = |r: f64| coupling * self.integrand_at(g, h, r);
        let q = pv::pv_real_line(&f, &pts);
        Some((q, coupling * closed(g, h)))
    }

    fn integral_value(&self, g: &[f64], h: &[f64], s: f64) -> QuadResult {
        let base = self.model.base();
        if (s - base).abs() < 1e-14 {
            return QuadResult {
                value: 0.0,
                error_estimate: 0.0,
            };
        }
        let (lo, hi, sign) = if s >= base {
            (base, s, 1.0)
        } else {
            (s, base, -1.0)
        };
        let f = |r: f64| self.integrand_at(g, h, r);
        let mut pts = self.singular_points(g, h);
        pts.retain(|r| lo <= *r && *r <= hi);
        let q = if pts.is_empty() {
            quadrature::integrate(&f, lo, hi, 1e-10)
        } else {
            pv::pv_interval(&f, lo, hi, &pts)
        };
        QuadResult {
            value: sign * q.value,
            error_estimate: q.error_estimate,
        }
    }

    /// Singular points of the transported integrand for this argument pair,
    /// including the weight pole of the multiplicative model, sorted with
    /// near-duplicates merged.
    fn singular_points(&self, g: &[f64], h: &[f64]) -> Vec<f64> {
        let mut pts: Vec<f64> = (self.singular)(g, h);
        if self.model == LineModel::Multiplicative {
            pts.push(0.0);
        }
        pts.retain(|r| r.is_finite());
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        pts
    }

    /// The model coordinate of a second-factor chart point.
    fn coordinate(&self, pt: &[f64]) -> Option<f64> {
        let c = match self.model {
            LineModel::Circle => pt[1].atan2(pt[0]),
            _ => pt[0],
        };
        c.is_finite().then_some(c)
    }

    fn compose(&self, t: f64, s: f64) -> f64 {
        match self.model {
            LineModel::Multiplicative => t * s,
            _ => t + s,
        }
    }

    fn sample_coord(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self.model {
            LineModel::Additive => rng.gen_range(-2.5..2.5),
            LineModel::Multiplicative => super::signed_log_uniform(rng),
            LineModel::Circle => rng.gen_range(-3.0..3.0),
        }
    }

    /// Reject integration paths that run unreasonably far or whose singular
    /// points crowd an endpoint or each other; the identities hold almost
    /// everywhere and the excised configurations carry no information.
    fn path_ok(&self, g: &[f64], h: &[f64], s: f64) -> bool {
        let base = self.model.base();
        if !s.is_finite() || (s - base).abs() > 60.0 {
            return false;
        }
        let (lo, hi) = if s >= base { (base, s) } else { (s, base) };
        let pts: Vec<f64> = self
            .singular_points(g, h)
            .into_iter()
            .filter(|r| lo - 0.3 <= *r && *r <= hi + 0.3)
            .collect();
        for w in pts.windows(2) {
            if (w[1] - w[0]).abs() < 1e-3 {
                return false;
            }
        }
        pts.iter()
            .all(|r| (r - lo).abs() > 0.05 && (r - hi).abs() > 0.05)
    }

    fn defect_sample(&self, rng: &mut ChaCha8Rng, mode: EvalMode) -> Option<DefectSample> {
        let g1 = self.pair.first();
        let g = g1.sample_point(rng);
        let h = g1.sample_point(rng);
        let k = g1.sample_point(rng);
        let s = self.sample_coord(rng);
        let t = self.sample_coord(rng);
        let gh = g1.multiply(&g, &h);
        let hk = g1.multiply(&h, &k);

        let ac = self.coordinate(&self.pair.alpha(&k, &self.model.point(s)))?;
        if ac.abs() > 30.0 {
            return None;
        }
        let spt = self.model.point(s);
        let sigma = self.pair.alpha(&h, &spt);
        let first = self.pair.beta(&sigma, &g);
        let second = self.pair.beta(&spt, &h);
        let ts = self.compose(t, s);

        let points: [&[f64]; 7] = [&g, &h, &k, &gh, &hk, &first, &second];
        if !points
            .iter()
            .all(|p| p.iter().all(|x| x.is_finite() && x.abs() < 1e3))
        {
            return None;
        }

        let triples: [(&[f64], &[f64], f64); 7] = [
            (&g, &h, ac),
            (&gh, &k, s),
            (&h, &k, s),
            (&g, &hk, s),
            (&g, &h, s),
            (&first, &second, t),
            (&g, &h, ts),
        ];
        if !triples.iter().all(|(u, v, w)| self.path_ok(u, v, *w)) {
            return None;
        }
        let mut vals = [0.0; 7];
        let mut err = 0.0;
        for (slot, (u, v, w)) in vals.iter_mut().zip(triples) {
            let q = self.value(1.0, u, v, w, mode).ok()?;
            if !q.value.is_finite() || q.value.abs() > 1e7 {
                return None;
            }
            *slot = q.value;
            err += q.error_estimate;
        }
        Some(DefectSample {
            id1: vals[0] + vals[1] - vals[2] - vals[3],
            id2: vals[4] + vals[5] - vals[6],
            err,
        })
    }
}

/// The two identity defects of one sampled configuration, at coupling one,
/// before reduction modulo `2*pi`.
struct DefectSample {
    id1: f64,
    id2: f64,
    err: f64,
}

fn defect_samples(
    family: &CocycleFamily,
    mode: EvalMode,
    cfg: &SampleConfig,
) -> Result<Vec<DefectSample>, GroupError> {
    if mode == EvalMode::Closed && !family.has_closed_form() {
        return Err(GroupError::NoClosedForm(family.name()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let mut found = None;
        for _ in 0..RETRY_CAP {
            if let Some(d) = family.defect_sample(&mut rng, mode) {
                found = Some(d);
                break;
            }
        }
        out.push(found.ok_or_else(|| GroupError::SamplingFailed(family.name()))?);
    }
    Ok(out)
}

/// Identity residuals of one coupling over a sample set.
#[derive(Debug, Clone)]
pub struct CocycleReport {
    pub entry: String,
    pub coupling: f64,
    pub identity1_max: f64,
    pub identity2_max: f64,
    pub error_estimate: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CocycleReport {
    pub fn max_residual(&self) -> f64 {
        self.identity1_max.max(self.identity2_max)
    }
}

/// A sensible pass tolerance for the evaluation route: closed forms are exact
/// up to rounding, integration carries quadrature and excision error.
pub fn recommended_tolerance(family: &CocycleFamily, mode: EvalMode) -> f64 {
    match mode {
        EvalMode::Closed => 1e-6,
        EvalMode::Auto if family.has_closed_form() => 1e-6,
        _ => 1e-3,
    }
}

fn residuals_at(defects: &[DefectSample], coupling: f64) -> (f64, f64, f64) {
    let mut id1 = 0.0f64;
    let mut id2 = 0.0f64;
    let mut err = 0.0f64;
    for d in defects {
        id1 = id1.max(wrap_angle(coupling * d.id1).abs());
        id2 = id2.max(wrap_angle(coupling * d.id2).abs());
        err = err.max(coupling.abs() * d.err);
    }
    (id1, id2, err)
}

/// Check both cocycle identities modulo `2*pi` at one coupling, over a seeded
/// sample of group elements and flow coordinates. The pass threshold is
/// `cfg.tol`.
pub fn check_group_cocycle(
    family: &CocycleFamily,
    coupling: f64,
    mode: EvalMode,
    cfg: &SampleConfig,
) -> Result<CocycleReport, GroupError> {
    let defects = defect_samples(family, mode, cfg)?;
    let (id1, id2, err) = residuals_at(&defects, coupling);
    Ok(CocycleReport {
        entry: family.name(),
        coupling,
        identity1_max: id1,
        identity2_max: id2,
        error_estimate: err,
        tolerance: cfg.tol,
        passed: id1 <= cfg.tol && id2 <= cfg.tol,
    })
}

/// One coupling of a scan.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub coupling: f64,
    pub identity1_max: f64,
    pub identity2_max: f64,
    pub passed: bool,
    pub expected: bool,
}

/// Evaluate the identity residuals on a grid of couplings. The defect of each
/// sampled configuration is computed once at coupling one and rescaled, so
/// the grid costs no further integration.
pub fn quantization_scan(
    family: &CocycleFamily,
    couplings: &[f64],
    mode: EvalMode,
    cfg: &SampleConfig,
) -> Result<Vec<ScanPoint>, GroupError> {
    let defects = defect_samples(family, mode, cfg)?;
    Ok(couplings
        .iter()
        .map(|&c| {
            let (id1, id2, _) = residuals_at(&defects, c);
            ScanPoint {
                coupling: c,
                identity1_max: id1,
                identity2_max: id2,
                passed: id1 <= cfg.tol && id2 <= cfg.tol,
                expected: family.expected_pass(c),
            }
        })
        .collect())
}

/// The derivative form of the first identity at the base point:
/// `Dalpha_k * f(g, h) + f(gh, k) = f(h, k) + f(g, hk)` where `Dalpha_k` is
/// the derivative of the model coordinate of `alpha_k` at the base. Returns
/// the largest residual over the sample set.
pub fn infinitesimal_generator_check(
    family: &CocycleFamily,
    cfg: &SampleConfig,
) -> Result<f64, GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g1 = family.pair.first();
    let base = family.model.base();
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples {
        let mut found = None;
        for _ in 0..RETRY_CAP {
            let g = g1.sample_point(&mut rng);
            let h = g1.sample_point(&mut rng);
            let k = g1.sample_point(&mut rng);
            let gh = g1.multiply(&g, &h);
            let hk = g1.multiply(&h, &k);
            let dk = k.clone();
            let dalpha = fd::derivative_refined(
                &|e| {
                    let pt = family.model.point(base + e);
                    family
                        .coordinate(&family.pair.alpha(&dk, &pt))
                        .unwrap_or(f64::NAN)
                },
                0.0,
            );
            let res = (dalpha * family.generator_value(&g, &h)
                + family.generator_value(&gh, &k)
                - family.generator_value(&h, &k)
                - family.generator_value(&g, &hk))
            .abs();
            if res.is_finite() {
                found = Some(res);
                break;
            }
        }
        worst = worst.max(found.ok_or_else(|| GroupError::SamplingFailed(family.name()))?);
    }
    Ok(worst)
}

/// Integrate the transported generator around the full circle and compare
/// with its closed form; meaningful only for the circle-model family. The
/// closed form is a difference of potentials, one per argument against their
/// product, each an arctangent of translation over one plus scale.
pub fn torus_obstruction(
    family: &CocycleFamily,
    coupling: f64,
    g: &[f64],
    h: &[f64],
) -> Option<(QuadResult, f64)> {
    if family.model != LineModel::Circle {
        return None;
    }
    let f = |r: f64| coupling * family.integrand_at(g, h, r);
    let q = quadrature::periodic_integral(&f, 1e-10);
    let gh = family.pair.first().multiply(g, h);
    let closed = coupling * (torus_potential(g) + torus_potential(h) - torus_potential(&gh));
    Some((q, closed))
}

fn torus_potential(p: &[f64]) -> f64 {
    -4.0 * PI * (p[1] / (1.0 + p[0])).atan()
}

/// Principal value of `c/(c*r + d) * ln|a*r + b|` over the whole line.
pub fn pole_log_integral(a: f64, b: f64, c: f64, d: f64) -> QuadResult {
    let f = move |r: f64| c / (c * r + d) * (a * r + b).abs().ln();
    let mut pts = Vec::new();
    pts.extend(affine_root(c, d));
    pts.extend(affine_root(a, b));
    pv::pv_real_line(&f, &pts)
}

/// The closed value of [`pole_log_integral`]: `pi^2/2` times the sign of
/// `b/a - d/c`.
pub fn pole_log_closed(a: f64, b: f64, c: f64, d: f64) -> f64 {
    0.5 * PI * PI * (b / a - d / c).signum()
}

#[cfg(test)]
mod tests {
    use super::super::verify::SampleConfig;
    use super::*;

    fn cfg(samples: usize, tol: f64) -> SampleConfig {
        SampleConfig {
            samples,
            seed: 42,
            tol,
        }
    }

    #[test]
    fn unknown_entries_and_parameters_are_rejected() {
        assert!(matches!(
            cocycle_family("9.9"),
            Err(CatalogError::UnknownEntry(_))
        ));
        assert!(matches!(
            cocycle_family("2.4"),
            Err(CatalogError::UnknownEntry(_))
        ));
        assert!(matches!(
            cocycle_family("4.1?b=1"),
            Err(CatalogError::UnknownParam { .. })
        ));
    }

    #[test]
    fn every_family_satisfies_the_infinitesimal_identity() {
        for head in COCYCLE_HEADS {
            let family = cocycle_family(head).unwrap();
            let worst = infinitesimal_generator_check(&family, &cfg(40, 1e-9)).unwrap();
            assert!(
                worst <= 1e-6,
                "generator identity fails on {head}: {worst:.3e}"
            );
        }
    }

    #[test]
    fn a_corrupted_generating_function_is_detected() {
        let mut family = cocycle_family("3").unwrap();
        family.generator = Rc::new(|g, h| g[0] * h[0] * g[1] * (1.1 * h[0]).ln());
        let worst = infinitesimal_generator_check(&family, &cfg(40, 1e-9)).unwrap();
        assert!(
            worst >= 1e-3,
            "corrupted generator slipped through: {worst:.3e}"
        );
    }

    #[test]
    fn closed_forms_match_direct_integration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for head in ["1.1", "2.1", "2.2", "2.3", "3", "4.2", "4.1"] {
            let family = cocycle_family(head).unwrap();
            let tol = if head == "4.1" { 1e-5 } else { 1e-7 };
            let mut checked = 0;
            while checked < 12 {
                let g = family.pair.first().sample_point(&mut rng);
                let h = family.pair.first().sample_point(&mut rng);
                let s = family.sample_coord(&mut rng);
                if !family.path_ok(&g, &h, s) {
                    continue;
                }
                let exact = family.value(1.0, &g, &h, s, EvalMode::Closed).unwrap();
                let quad = family.value(1.0, &g, &h, s, EvalMode::Integral).unwrap();
                let scale = 1.0 + exact.value.abs();
                assert!(
                    (exact.value - quad.value).abs() / scale <= tol,
                    "{head}: closed {} vs integral {} at s={s}",
                    exact.value,
                    quad.value
                );
                checked += 1;
            }
        }
    }

    #[test]
    fn closed_form_cocycles_vanish_at_the_base_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for head in ["1.1", "2.1", "2.2", "2.3", "3", "4.2", "4.1"] {
            let family = cocycle_family(head).unwrap();
            let base = family.model.base();
            for _ in 0..20 {
                let g = family.pair.first().sample_point(&mut rng);
                let h = family.pair.first().sample_point(&mut rng);
                let v = family.value(1.0, &g, &h, base, EvalMode::Closed).unwrap();
                assert!(v.value.abs() <= 1e-12, "{head}: nonzero at base: {}", v.value);
            }
        }
    }

    #[test]
    fn excision_on_a_smooth_integrand_matches_plain_quadrature() {
        let family = cocycle_family("4.2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = family.pair.first().sample_point(&mut rng);
        let h = family.pair.first().sample_point(&mut rng);
        let f = |r: f64| family.integrand_at(&g, &h, r);
        let plain = quadrature::integrate(&f, 0.0, 2.0, 1e-12);
        let excised = pv::pv_interval(&f, 0.0, 2.0, &[1.0]);
        assert!(
            (plain.value - excised.value).abs() <= 1e-9,
            "excision drifts on a smooth integrand: {} vs {}",
            plain.value,
            excised.value
        );
    }

    #[test]
    fn values_are_additive_in_the_coupling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (head, mode) in [("4.1", EvalMode::Closed), ("4.3=0", EvalMode::Integral)] {
            let family = cocycle_family(head).unwrap();
            loop {
                let g = family.pair.first().sample_point(&mut rng);
                let h = family.pair.first().sample_point(&mut rng);
                let s = family.sample_coord(&mut rng);
                if !family.path_ok(&g, &h, s) {
                    continue;
                }
                let a = family.value(0.3, &g, &h, s, mode).unwrap().value;
                let b = family.value(0.4, &g, &h, s, mode).unwrap().value;
                let c = family.value(0.7, &g, &h, s, mode).unwrap().value;
                assert!(
                    (a + b - c).abs() <= 1e-8,
                    "{head}: coupling additivity fails: {a} + {b} != {c}"
                );
                break;
            }
        }
    }

    #[test]
    fn full_line_families_pass_both_identities_at_every_coupling() {
        for head in ["1.1", "2.1", "2.2", "2.3", "3", "4.2", "4.1"] {
            let family = cocycle_family(head).unwrap();
            for coupling in [1.0, -0.7] {
                let report =
                    check_group_cocycle(&family, coupling, EvalMode::Closed, &cfg(60, 1e-6))
                        .unwrap();
                assert!(
                    report.passed,
                    "{head} at coupling {coupling}: id1 {:.3e}, id2 {:.3e}",
                    report.identity1_max, report.identity2_max
                );
            }
        }
    }

    #[test]
    fn integration_reproduces_the_closed_form_identities() {
        let family = cocycle_family("4.1").unwrap();
        let report =
            check_group_cocycle(&family, 1.0, EvalMode::Integral, &cfg(25, 1e-3)).unwrap();
        assert!(
            report.passed,
            "integral route fails: id1 {:.3e}, id2 {:.3e}",
            report.identity1_max, report.identity2_max
        );
    }

    #[test]
    fn parabolic_couplings_quantize_on_the_lattice() {
        let family = cocycle_family("4.3=0").unwrap();
        let grid = [
            0.0,
            QUANTIZATION_STEP,
            -QUANTIZATION_STEP,
            2.0 * QUANTIZATION_STEP,
            -2.0 * QUANTIZATION_STEP,
            1.0,
            2.0,
        ];
        let scan = quantization_scan(&family, &grid, EvalMode::Integral, &cfg(40, 1e-3)).unwrap();
        for point in &scan {
            assert_eq!(
                point.passed, point.expected,
                "coupling {}: id1 {:.3e}",
                point.coupling, point.identity1_max
            );
            if !point.expected {
                assert!(
                    point.identity1_max >= 1e-1,
                    "off-lattice coupling {} fails too quietly: {:.3e}",
                    point.coupling,
                    point.identity1_max
                );
            }
        }
    }

    #[test]
    fn hyperbolic_couplings_quantize_on_the_same_lattice() {
        let family = cocycle_family("4.3+").unwrap();
        let grid = [0.0, QUANTIZATION_STEP, 1.0];
        let scan = quantization_scan(&family, &grid, EvalMode::Integral, &cfg(25, 1e-3)).unwrap();
        for point in &scan {
            assert_eq!(
                point.passed, point.expected,
                "coupling {}: id1 {:.3e}",
                point.coupling, point.identity1_max
            );
            if !point.expected {
                assert!(point.identity1_max >= 1e-1);
            }
        }
    }

    #[test]
    fn the_long_display_matches_the_transported_generator() {
        let family = cocycle_family("4.3+").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut checked = 0;
        while checked < 200 {
            let g = family.pair.first().sample_point(&mut rng);
            let h = family.pair.first().sample_point(&mut rng);
            let r: f64 = super::super::signed_log_uniform(&mut rng);
            if family
                .singular_points(&g, &h)
                .iter()
                .any(|p| (p - r).abs() < 1e-2)
            {
                continue;
            }
            let display = family.integrand_at(&g, &h, r);
            let pt = family.model.point(r);
            let sigma = family.pair.alpha(&h, &pt);
            let first = family.pair.beta(&sigma, &g);
            let second = family.pair.beta(&pt, &h);
            let flowed = family.generator_value(&first, &second) * family.model.weight(r);
            let scale = 1.0 + display.abs();
            assert!(
                (display - flowed).abs() / scale <= 1e-9,
                "display {display} vs flowed {flowed} at r={r}"
            );
            checked += 1;
        }
    }

    #[test]
    fn the_circle_obstruction_matches_its_closed_form() {
        let family = cocycle_family("4.3-").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut largest = 0.0f64;
        for _ in 0..30 {
            let g = family.pair.first().sample_point(&mut rng);
            let h = family.pair.first().sample_point(&mut rng);
            let (quad, closed) = torus_obstruction(&family, 1.0, &g, &h).unwrap();
            assert!(
                (quad.value - closed).abs() <= 1e-5,
                "obstruction mismatch: {} vs {}",
                quad.value,
                closed
            );
            largest = largest.max(closed.abs());
        }
        assert!(
            largest >= 1e-2,
            "obstruction never leaves zero over the sample set"
        );
    }

    #[test]
    fn the_circle_family_admits_only_the_zero_coupling() {
        let family = cocycle_family("4.3-").unwrap();
        let grid = [0.0, QUANTIZATION_STEP, 1.0];
        let scan = quantization_scan(&family, &grid, EvalMode::Integral, &cfg(15, 1e-3)).unwrap();
        for point in &scan {
            assert_eq!(
                point.passed, point.expected,
                "coupling {}: id1 {:.3e}",
                point.coupling, point.identity1_max
            );
        }
    }

    #[test]
    fn pole_log_principal_values_match_the_sign_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let a = super::super::signed_log_uniform(&mut rng);
            let b = super::super::signed_log_uniform(&mut rng);
            let c = super::super::signed_log_uniform(&mut rng);
            let d = super::super::signed_log_uniform(&mut rng);
            if (b / a - d / c).abs() < 1e-2 {
                continue;
            }
            let q = pole_log_integral(a, b, c, d);
            let closed = pole_log_closed(a, b, c, d);
            assert!(
                (q.value - closed).abs() <= 1e-5,
                "principal value {} vs sign formula {} for ({a}, {b}, {c}, {d})",
                q.value,
                closed
            );
        }
    }

    #[test]
    fn the_parabolic_full_line_value_matches_its_sign_formula() {
        let family = cocycle_family("4.3=0").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut checked = 0;
        while checked < 10 {
            let g = family.pair.first().sample_point(&mut rng);
            let h = family.pair.first().sample_point(&mut rng);
            let pts = family.singular_points(&g, &h);
            if pts.len() < 2 || pts.windows(2).any(|w| (w[1] - w[0]).abs() < 0.1) {
                continue;
            }
            let (quad, closed) = family.full_line_value(1.0, &g, &h).unwrap();
            assert!(
                (quad.value - closed).abs() <= 1e-5,
                "full-line value {} vs sign formula {}",
                quad.value,
                closed
            );
            checked += 1;
        }
    }
}
