//! Coordinate Lie groups and matched pairs of them: charts with explicit
//! multiplication laws, the mutual actions `alpha` and `beta`, modular
//! functions, and the data needed to recover the infinitesimal picture.

pub mod catalog;
pub mod cocycles;
pub mod verify;

use crate::catalog::CatalogError;
use crate::scalar::Q;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("sampler exhausted its retries looking for in-domain points of `{0}`")]
    SamplingFailed(String),
    #[error("entry `{0}` does not integrate a catalog matched pair")]
    NoCatalogTarget(String),
    #[error("infinitesimal recovery needs a one-dimensional second factor, found dimension {0}")]
    ComplementDimension(usize),
    #[error("entry `{0}` ships no closed-form cocycle")]
    NoClosedForm(String),
}

type Map1 = Rc<dyn Fn(&[f64]) -> Vec<f64>>;
type Map2 = Rc<dyn Fn(&[f64], &[f64]) -> Vec<f64>>;

/// A Lie group presented in one global coordinate chart: the group operations
/// as closures on coordinate vectors, a distinguished identity point, basis
/// curves through the identity, and the modular function in closed form.
///
/// `dim` counts chart coordinates while `lie_dim` counts tangent directions;
/// they differ when the chart is redundant (a projective matrix chart, or a
/// circle stored as a point of the plane).
#[derive(Clone)]
pub struct Chart {
    dim: usize,
    lie_dim: usize,
    identity: Vec<f64>,
    mul: Map2,
    inv: Map1,
    normalize: Option<Map1>,
    projective: bool,
    curve: Rc<dyn Fn(usize, f64) -> Vec<f64>>,
    local: Map1,
    sample: Rc<dyn Fn(&mut ChaCha8Rng) -> Vec<f64>>,
    modular: Rc<dyn Fn(&[f64]) -> f64>,
}

impl Chart {
    /// A chart whose coordinates are an affine neighbourhood of the identity:
    /// basis curves move one coordinate at a time and local coordinates are
    /// differences from the identity point.
    pub fn new(
        identity: Vec<f64>,
        mul: impl Fn(&[f64], &[f64]) -> Vec<f64> + 'static,
        inv: impl Fn(&[f64]) -> Vec<f64> + 'static,
        sample: impl Fn(&mut ChaCha8Rng) -> Vec<f64> + 'static,
        modular: impl Fn(&[f64]) -> f64 + 'static,
    ) -> Self {
        let dim = identity.len();
        let id_curve = identity.clone();
        let id_local = identity.clone();
        Chart {
            dim,
            lie_dim: dim,
            identity,
            mul: Rc::new(mul),
            inv: Rc::new(inv),
            normalize: None,
            projective: false,
            curve: Rc::new(move |i, t| {
                let mut p = id_curve.clone();
                p[i] += t;
                p
            }),
            local: Rc::new(move |p| p.iter().zip(&id_local).map(|(a, b)| a - b).collect()),
            sample: Rc::new(sample),
            modular: Rc::new(modular),
        }
    }

    /// Replace the affine basis curves and local coordinates, for charts whose
    /// tangent space is not spanned by the coordinate directions.
    pub fn with_geometry(
        mut self,
        lie_dim: usize,
        curve: impl Fn(usize, f64) -> Vec<f64> + 'static,
        local: impl Fn(&[f64]) -> Vec<f64> + 'static,
    ) -> Self {
        self.lie_dim = lie_dim;
        self.curve = Rc::new(curve);
        self.local = Rc::new(local);
        self
    }

    /// Install a canonical-form map applied before comparing points, for
    /// charts with a residual coordinate ambiguity (projective signs, points
    /// drifting off the unit circle).
    pub fn with_normalize(mut self, normalize: impl Fn(&[f64]) -> Vec<f64> + 'static) -> Self {
        self.normalize = Some(Rc::new(normalize));
        self
    }

    /// Treat points differing by an overall sign as equal, for charts that
    /// coordinatize a quotient by the center `{1, -1}`.
    pub fn with_projective_distance(mut self) -> Self {
        self.projective = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_dim
    }

    pub fn identity(&self) -> &[f64] {
        &self.identity
    }

    pub fn multiply(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        (self.mul)(a, b)
    }

    pub fn inverse(&self, a: &[f64]) -> Vec<f64> {
        (self.inv)(a)
    }

    pub fn canonical(&self, a: &[f64]) -> Vec<f64> {
        match &self.normalize {
            Some(n) => n(a),
            None => a.to_vec(),
        }
    }

    /// Largest coordinate difference after canonicalization.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let a = self.canonical(a);
        let b = self.canonical(b);
        let straight = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        if self.projective {
            let flipped = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x + y).abs())
                .fold(0.0, f64::max);
            straight.min(flipped)
        } else {
            straight
        }
    }

    pub fn basis_curve(&self, direction: usize, t: f64) -> Vec<f64> {
        (self.curve)(direction, t)
    }

    pub fn local_coords(&self, p: &[f64]) -> Vec<f64> {
        (self.local)(p)
    }

    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (self.sample)(rng)
    }

    pub fn modular_value(&self, p: &[f64]) -> f64 {
        (self.modular)(p)
    }
}

/// The coordinate model of a one-dimensional second factor, fixing how a real
/// integration variable embeds into the chart, the base point of integrals,
/// and the invariant weight against the Lebesgue measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineModel {
    /// The additive line; base point 0, weight 1.
    Additive,
    /// The punctured multiplicative line in its own coordinate; base point 1,
    /// weight 1/r.
    Multiplicative,
    /// The unit circle stored as (cos t, sin t); the variable is the angle.
    Circle,
}

impl LineModel {
    pub fn base(&self) -> f64 {
        match self {
            LineModel::Multiplicative => 1.0,
            _ => 0.0,
        }
    }

    pub fn point(&self, r: f64) -> Vec<f64> {
        match self {
            LineModel::Circle => vec![r.cos(), r.sin()],
            _ => vec![r],
        }
    }

    pub fn weight(&self, r: f64) -> f64 {
        match self {
            LineModel::Multiplicative => 1.0 / r,
            _ => 1.0,
        }
    }
}

/// Closed forms attached to the Kac criterion of an entry: the expected
/// outcome of the first equality and, where stated, the modular element and
/// dual modular element as functions of a first-factor point and a
/// second-factor point.
pub struct KacForms {
    pub expected: Option<bool>,
    pub delta_m: Option<Rc<dyn Fn(&[f64], &[f64]) -> f64>>,
    pub delta_m_hat: Option<Rc<dyn Fn(&[f64], &[f64]) -> f64>>,
}

impl Default for KacForms {
    fn default() -> Self {
        KacForms {
            expected: None,
            delta_m: None,
            delta_m_hat: None,
        }
    }
}

/// The linear isomorphism carrying a catalog matched pair onto the
/// infinitesimal data of a group pair: `map` holds the images of the catalog
/// basis in columns, and the complement generator is scaled by `scale`.
#[derive(Debug, Clone)]
pub struct CatalogIso {
    pub map: Vec<Vec<f64>>,
    pub scale: f64,
}

impl CatalogIso {
    pub fn identity(n: usize, scale: f64) -> Self {
        let map = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        CatalogIso { map, scale }
    }

    /// Image of the `j`-th catalog basis vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.map.iter().map(|row| row[j]).collect()
    }

    /// Apply the map to coordinates in the catalog basis.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.map
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }
}

/// A matched pair of coordinate Lie groups: the ambient group `g`, the two
/// factors with their embeddings, and the mutual actions defined nearly
/// everywhere by the factorization `i(g) j(s) = j(alpha_g(s)) i(beta_s(g))`.
pub struct GroupPair {
    name: String,
    params: BTreeMap<String, Q>,
    g: Chart,
    g1: Chart,
    g2: Chart,
    embed1: Map1,
    embed2: Map1,
    alpha: Map2,
    beta: Map2,
    g2_model: Option<LineModel>,
    algebra_entry: Option<String>,
    iso: Option<CatalogIso>,
    kac: KacForms,
}

impl GroupPair {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        params: BTreeMap<String, Q>,
        g: Chart,
        g1: Chart,
        g2: Chart,
        embed1: impl Fn(&[f64]) -> Vec<f64> + 'static,
        embed2: impl Fn(&[f64]) -> Vec<f64> + 'static,
        alpha: impl Fn(&[f64], &[f64]) -> Vec<f64> + 'static,
        beta: impl Fn(&[f64], &[f64]) -> Vec<f64> + 'static,
    ) -> Self {
        GroupPair {
            name: name.to_string(),
            params,
            g,
            g1,
            g2,
            embed1: Rc::new(embed1),
            embed2: Rc::new(embed2),
            alpha: Rc::new(alpha),
            beta: Rc::new(beta),
            g2_model: None,
            algebra_entry: None,
            iso: None,
            kac: KacForms::default(),
        }
    }

    pub fn with_g2_model(mut self, model: LineModel) -> Self {
        self.g2_model = Some(model);
        self
    }

    pub fn with_catalog_target(mut self, entry: &str, iso: CatalogIso) -> Self {
        self.algebra_entry = Some(entry.to_string());
        self.iso = Some(iso);
        self
    }

    pub fn with_kac(mut self, kac: KacForms) -> Self {
        self.kac = kac;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, Q> {
        &self.params
    }

    /// Canonical name with all effective parameters spelled out.
    pub fn full_name(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let args: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{}={}", k, crate::scalar::fmt_ratio(v)))
            .collect();
        format!("{}?{}", self.name, args.join("&"))
    }

    pub fn ambient(&self) -> &Chart {
        &self.g
    }

    pub fn first(&self) -> &Chart {
        &self.g1
    }

    pub fn second(&self) -> &Chart {
        &self.g2
    }

    pub fn embed_first(&self, g: &[f64]) -> Vec<f64> {
        (self.embed1)(g)
    }

    pub fn embed_second(&self, s: &[f64]) -> Vec<f64> {
        (self.embed2)(s)
    }

    /// The action of the first factor on the second: `alpha_g(s)`.
    pub fn alpha(&self, g: &[f64], s: &[f64]) -> Vec<f64> {
        (self.alpha)(g, s)
    }

    /// The action of the second factor on the first: `beta_s(g)`.
    pub fn beta(&self, s: &[f64], g: &[f64]) -> Vec<f64> {
        (self.beta)(s, g)
    }

    pub fn second_model(&self) -> Option<LineModel> {
        self.g2_model
    }

    pub fn algebra_entry(&self) -> Option<&str> {
        self.algebra_entry.as_deref()
    }

    pub fn catalog_iso(&self) -> Option<&CatalogIso> {
        self.iso.as_ref()
    }

    pub fn kac_expected(&self) -> Option<bool> {
        self.kac.expected
    }

    pub fn delta_m_closed(&self, g: &[f64], s: &[f64]) -> Option<f64> {
        self.kac.delta_m.as_ref().map(|f| f(g, s))
    }

    pub fn delta_m_hat_closed(&self, g: &[f64], s: &[f64]) -> Option<f64> {
        self.kac.delta_m_hat.as_ref().map(|f| f(g, s))
    }

    /// The modular element evaluated from the chart data alone.
    pub fn delta_m_empirical(&self, g: &[f64], s: &[f64]) -> f64 {
        let a = self.alpha(g, s);
        1.0 / self.g.modular_value(&self.embed_second(&a))
    }

    /// The dual modular element evaluated from the chart data alone.
    pub fn delta_m_hat_empirical(&self, g: &[f64], s: &[f64]) -> f64 {
        let b = self.beta(s, g);
        let d1 = self.g1.modular_value(&b);
        self.g.modular_value(&self.embed_first(&b)) / (d1 * d1)
    }
}

/// Standard normal variate for additive coordinates.
pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(1e-12..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Log-uniform magnitude in `[lo, hi]` for multiplicative coordinates.
pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Log-uniform magnitude in a moderate band, with a random sign.
pub fn signed_log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    let m = log_uniform(rng, 0.3, 3.0);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// True when every coordinate is finite and of moderate size, the working
/// definition of "inside the domain" for rejection sampling.
pub fn in_domain(points: &[&[f64]]) -> bool {
    points
        .iter()
        .all(|p| p.iter().all(|x| x.is_finite() && x.abs() < 1e9))
}
