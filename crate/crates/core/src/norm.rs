//! The generalized intuitionistic fuzzy ψ-norm (μ, ν) and its validator.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::FuzzyConnectives;
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Relation, Tally, Witness};
use crate::sampler::{log_uniform, signed_log_uniform, uniform, uniform_vector, SamplerConfig};
use crate::vector::{self, check_dim, CrispNorm};

/// Dimension and crisp norm of the underlying space ℝᵈ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VectorSpaceConfig {
    pub dimension: usize,
    pub crisp_norm: CrispNorm,
}

impl VectorSpaceConfig {
    pub fn new(dimension: usize, crisp_norm: CrispNorm) -> Result<Self> {
        let s = VectorSpaceConfig {
            dimension,
            crisp_norm,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn euclidean(dimension: usize) -> Self {
        VectorSpaceConfig {
            dimension,
            crisp_norm: CrispNorm::EUCLIDEAN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Domain("dimension must be >= 1".into()));
        }
        self.crisp_norm.validate()
    }
}

/// A membership / non-membership pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MembershipPair {
    pub mu: f64,
    pub nu: f64,
}

impl MembershipPair {
    /// μ, ν ∈ [0, 1], μ + ν ≤ 1 + tol, μ > 0 and ν < 1.
    pub fn is_consistent(&self, tol: f64) -> bool {
        (0.0..=1.0).contains(&self.mu)
            && (0.0..=1.0).contains(&self.nu)
            && self.mu + self.nu <= 1.0 + tol
            && self.mu > 0.0
            && self.nu < 1.0
    }
}

type MembershipFn = dyn Fn(&[f64], f64) -> f64 + Send + Sync;

/// User-supplied μ and ν.
#[derive(Clone)]
pub struct CustomMembership {
    name: String,
    mu: Arc<MembershipFn>,
    nu: Arc<MembershipFn>,
}

impl fmt::Debug for CustomMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomMembership").field("name", &self.name).finish_non_exhaustive()
    }
}

impl PartialEq for CustomMembership {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.mu, &other.mu) && Arc::ptr_eq(&self.nu, &other.nu)
    }
}

impl Serialize for CustomMembership {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CustomMembership", 1)?;
        st.serialize_field("name", &self.name)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NormKind {
    /// μ = t/(t + k‖x‖), ν = k‖x‖/(t + k‖x‖).
    Standard { k: f64 },
    Custom(CustomMembership),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GifPsiNorm {
    pub space: VectorSpaceConfig,
    pub connectives: FuzzyConnectives,
    pub kind: NormKind,
}

impl GifPsiNorm {
    /// The standard construction from the crisp norm of `space`.
    pub fn standard(space: VectorSpaceConfig, k: f64, connectives: FuzzyConnectives) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!("k = {k} must be > 0")));
        }
        space.validate()?;
        connectives.validate_parameters()?;
        Ok(GifPsiNorm {
            space,
            connectives,
            kind: NormKind::Standard { k },
        })
    }

    pub fn custom(
        space: VectorSpaceConfig,
        connectives: FuzzyConnectives,
        name: impl Into<String>,
        mu: impl Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
        nu: impl Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        space.validate()?;
        connectives.validate_parameters()?;
        Ok(GifPsiNorm {
            space,
            connectives,
            kind: NormKind::Custom(CustomMembership {
                name: name.into(),
                mu: Arc::new(mu),
                nu: Arc::new(nu),
            }),
        })
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension
    }

    /// k for the standard kind.
    pub fn k(&self) -> Option<f64> {
        match self.kind {
            NormKind::Standard { k } => Some(k),
            NormKind::Custom(_) => None,
        }
    }

    pub fn crisp(&self, x: &[f64]) -> f64 {
        self.space.crisp_norm.eval(x)
    }

    /// (μ(x, t), ν(x, t)) with argument checks.
    pub fn eval_membership(&self, x: &[f64], t: f64) -> Result<MembershipPair> {
        check_dim(self.dimension(), x)?;
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("t = {t} must be a finite value > 0")));
        }
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("vector has non-finite components".into()));
        }
        let (mu, nu) = self.pair(x, t);
        Ok(MembershipPair { mu, nu })
    }

    /// Unchecked (μ, ν).
    #[inline]
    pub fn pair(&self, x: &[f64], t: f64) -> (f64, f64) {
        match &self.kind {
            NormKind::Standard { k } => {
                let kn = k * self.space.crisp_norm.eval(x);
                let denom = t + kn;
                (t / denom, kn / denom)
            }
            NormKind::Custom(c) => ((c.mu)(x, t), (c.nu)(x, t)),
        }
    }

    /// (μ, ν) at every t in `ts`, computing the crisp norm once.
    pub fn pairs_into(&self, x: &[f64], ts: &[f64], out: &mut [(f64, f64)]) {
        match &self.kind {
            NormKind::Standard { k } => {
                let kn = k * self.space.crisp_norm.eval(x);
                for (o, &t) in out.iter_mut().zip(ts) {
                    let denom = t + kn;
                    *o = (t / denom, kn / denom);
                }
            }
            NormKind::Custom(c) => {
                for (o, &t) in out.iter_mut().zip(ts) {
                    *o = ((c.mu)(x, t), (c.nu)(x, t));
                }
            }
        }
    }

    #[inline]
    pub fn mu(&self, x: &[f64], t: f64) -> f64 {
        self.pair(x, t).0
    }

    #[inline]
    pub fn nu(&self, x: &[f64], t: f64) -> f64 {
        self.pair(x, t).1
    }
}

/// Margin for the converse directions of (iii) and (viii): x ≠ θ must give
/// μ ≤ 1 − margin and ν ≥ margin.
pub const DEFINITENESS_MARGIN: f64 = 1e-12;

struct Sample {
    x: Vec<f64>,
    y: Vec<f64>,
    s: f64,
    t: f64,
    alpha: f64,
}

/// Sample `i`: θ first, then (eᵢ, eᵢ) at s = t = 1, α = 2, then (eⱼ, −eⱼ),
/// then uniform vectors in [−10, 10]ᵈ with every third pair collinear.
fn draw(i: usize, d: usize, sampler: &SamplerConfig) -> Sample {
    let mut rng = sampler.rng(i);
    let s = log_uniform(&mut rng, 1e-3, 1e3);
    let t = log_uniform(&mut rng, 1e-3, 1e3);
    let alpha = signed_log_uniform(&mut rng, 1e-3, 1e3);
    if i == 0 {
        return Sample {
            x: vector::zeros(d),
            y: vector::zeros(d),
            s,
            t,
            alpha,
        };
    }
    if i <= d {
        let e = vector::basis_vector(d, i - 1);
        return Sample {
            x: e.clone(),
            y: e,
            s: 1.0,
            t: 1.0,
            alpha: 2.0,
        };
    }
    if i <= 2 * d {
        let e = vector::basis_vector(d, i - d - 1);
        return Sample {
            y: vector::scale(-1.0, &e),
            x: e,
            s,
            t,
            alpha,
        };
    }
    let x = uniform_vector(&mut rng, d, -10.0, 10.0);
    let y = if i.is_multiple_of(3) {
        let lambda = signed_log_uniform(&mut rng, 1e-2, 1e2);
        vector::scale(lambda, &x)
    } else {
        uniform_vector(&mut rng, d, -10.0, 10.0)
    };
    Sample { x, y, s, t, alpha }
}

fn wx(x: &[f64], t: f64) -> Witness {
    Witness {
        x: Some(x.to_vec()),
        t: Some(t),
        ..Default::default()
    }
}

/// Checks axioms (i)–(xi) on seeded samples. Failures are report entries;
/// only a malformed sampler is an error.
pub fn validate_axioms(n: &GifPsiNorm, sampler: &SamplerConfig) -> Result<AxiomReport> {
    sampler.validate()?;
    let d = n.dimension();
    let tol = sampler.tolerance;
    let c = &n.connectives;
    let (t_inf, eps_inf) = (sampler.horizon, sampler.horizon_epsilon);
    let horizon_note = format!(
        "limit part tested at horizon T = {t_inf:e} with epsilon {eps_inf:e}"
    );

    let mut i1 = Tally::new("i", tol);
    let mut i2 = Tally::new("ii", tol);
    let mut i3 = Tally::new("iii", tol).with_note(format!(
        "x = θ requires μ = 1 exactly; x ≠ θ requires μ <= 1 - {DEFINITENESS_MARGIN:e}"
    ));
    let mut i4 = Tally::new("iv", tol);
    let mut i5 = Tally::new("v", tol);
    let mut i6 = Tally::new("vi", tol).with_note(horizon_note.clone());
    let mut i7 = Tally::new("vii", tol);
    let mut i8 = Tally::new("viii", tol).with_note(format!(
        "x = θ requires ν = 0 exactly; x ≠ θ requires ν >= {DEFINITENESS_MARGIN:e}"
    ));
    let mut i9 = Tally::new("ix", tol);
    let mut i10 = Tally::new("x", tol);
    let mut i11 = Tally::new("xi", tol).with_note(horizon_note);

    for i in 0..sampler.samples {
        let Sample { x, y, s, t, alpha } = draw(i, d, sampler);
        let (mu_xt, nu_xt) = n.pair(&x, t);
        let (mu_ys, nu_ys) = n.pair(&y, s);

        i1.observe(i, mu_xt + nu_xt, Relation::AtMost, 1.0, || wx(&x, t));
        i1.observe(i, mu_ys + nu_ys, Relation::AtMost, 1.0, || wx(&y, s));
        i2.observe(i, mu_xt, Relation::Above, 0.0, || wx(&x, t));
        i7.observe(i, nu_xt, Relation::Below, 1.0, || wx(&x, t));

        if vector::is_zero(&x) {
            i3.observe_with_tolerance(i, mu_xt, Relation::Equal, 1.0, 0.0, || wx(&x, t));
            i8.observe_with_tolerance(i, nu_xt, Relation::Equal, 0.0, 0.0, || wx(&x, t));
        } else {
            i3.observe_with_tolerance(i, mu_xt, Relation::AtMost, 1.0 - DEFINITENESS_MARGIN, 0.0, || {
                wx(&x, t)
            });
            i8.observe_with_tolerance(i, nu_xt, Relation::AtLeast, DEFINITENESS_MARGIN, 0.0, || {
                wx(&x, t)
            });
        }

        let ax = vector::scale(alpha, &x);
        let scaled_t = t / c.psi.eval(alpha);
        let (mu_ax, nu_ax) = n.pair(&ax, t);
        let (mu_sc, nu_sc) = n.pair(&x, scaled_t);
        let w_alpha = || Witness {
            x: Some(x.clone()),
            t: Some(t),
            alpha: Some(alpha),
            ..Default::default()
        };
        i4.observe(i, mu_ax, Relation::Equal, mu_sc, w_alpha);
        i9.observe(i, nu_ax, Relation::Equal, nu_sc, w_alpha);

        let sum = vector::add(&x, &y);
        let st = c.circle.eval(s, t);
        let (mu_sum, nu_sum) = n.pair(&sum, st);
        let (mu_xs, nu_xs) = n.pair(&x, s);
        let (mu_yt, nu_yt) = n.pair(&y, t);
        let w_tri = || Witness {
            x: Some(x.clone()),
            y: Some(y.clone()),
            s: Some(s),
            t: Some(t),
            ..Default::default()
        };
        i5.observe(i, c.tnorm.eval(mu_xs, mu_yt), Relation::AtMost, mu_sum, w_tri);
        i10.observe(i, c.tconorm.eval(nu_xs, nu_yt), Relation::AtLeast, nu_sum, w_tri);

        // Monotonicity in t: along the grid, then between the two sampled times.
        let mut prev: Option<(f64, f64, f64)> = None;
        for &tg in &sampler.t_grid {
            let (m, v) = n.pair(&x, tg);
            if let Some((tp, mp, vp)) = prev {
                let w = || Witness {
                    x: Some(x.clone()),
                    s: Some(tp),
                    t: Some(tg),
                    ..Default::default()
                };
                i6.observe(i, mp, Relation::AtMost, m, w);
                i11.observe(i, vp, Relation::AtLeast, v, w);
            }
            prev = Some((tg, m, v));
        }
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        let (m_lo, v_lo) = n.pair(&x, lo);
        let (m_hi, v_hi) = n.pair(&x, hi);
        let w = || Witness {
            x: Some(x.clone()),
            s: Some(lo),
            t: Some(hi),
            ..Default::default()
        };
        i6.observe(i, m_lo, Relation::AtMost, m_hi, w);
        i11.observe(i, v_lo, Relation::AtLeast, v_hi, w);

        let (m_inf, v_inf) = n.pair(&x, t_inf);
        i6.observe(i, m_inf, Relation::AtLeast, 1.0 - eps_inf, || wx(&x, t_inf));
        i11.observe(i, v_inf, Relation::AtMost, eps_inf, || wx(&x, t_inf));
    }

    let mut report = AxiomReport::new("generalized intuitionistic fuzzy psi-norm");
    report.entries = alloc::vec![
        i1.finish(),
        i2.finish(),
        i3.finish(),
        i4.finish(),
        i5.finish(),
        i6.finish(),
        i7.finish(),
        i8.finish(),
        i9.finish(),
        i10.finish(),
        i11.finish(),
    ];
    report.notes.push(format!(
        "sampled {} points with seed {}; every entry is a finite-sample check",
        sampler.samples, sampler.seed
    ));
    Ok(report)
}

/// Reports the conditions on idempotent connectives and on x ≠ θ that the
/// closedness/boundedness results rely on. Failures are informative.
///
/// - `xii`: a ∗ a = a and a ⋄ a = a on sampled a.
/// - `xiii`: every sampled x ≠ θ has some t in {1} ∪ grid with μ(x, t) < 1.
/// - `xiv`: likewise with ν(x, t) > 0.
pub fn check_extra_conditions(n: &GifPsiNorm, sampler: &SamplerConfig) -> Result<AxiomReport> {
    sampler.validate()?;
    let d = n.dimension();
    let tol = sampler.tolerance;
    let c = &n.connectives;
    let mut i12 = Tally::new("xii", tol);
    let mut i13 = Tally::new("xiii", 0.0);
    let mut i14 = Tally::new("xiv", 0.0);
    let forced = [0.0, 1.0, 0.5];
    let times: Vec<f64> = core::iter::once(1.0).chain(sampler.t_grid.iter().copied()).collect();

    for i in 0..sampler.samples {
        let mut rng = sampler.rng(i);
        let a = if i < forced.len() {
            forced[i]
        } else {
            rng.random::<f64>()
        };
        i12.observe(i, c.tnorm.eval(a, a), Relation::Equal, a, || Witness::scalars(&[a]));
        i12.observe(i, c.tconorm.eval(a, a), Relation::Equal, a, || Witness::scalars(&[a]));

        let x = if i < d {
            vector::basis_vector(d, i)
        } else {
            let mut v = uniform_vector(&mut rng, d, -10.0, 10.0);
            if vector::is_zero(&v) {
                v[0] = uniform(&mut rng, 0.5, 1.0);
            }
            v
        };
        let mu_hit = times.iter().map(|&t| (t, n.mu(&x, t))).find(|&(_, m)| m < 1.0);
        match mu_hit {
            Some((t, m)) => {
                i13.observe(i, m, Relation::Below, 1.0, || wx(&x, t));
                i13.certify(i, m, Relation::Below, 1.0, wx(&x, t));
            }
            None => {
                let t = *times.last().unwrap_or(&1.0);
                i13.observe(i, n.mu(&x, t), Relation::Below, 1.0, || wx(&x, t));
            }
        }
        let nu_hit = times.iter().map(|&t| (t, n.nu(&x, t))).find(|&(_, v)| v > 0.0);
        match nu_hit {
            Some((t, v)) => {
                i14.observe(i, v, Relation::Above, 0.0, || wx(&x, t));
                i14.certify(i, v, Relation::Above, 0.0, wx(&x, t));
            }
            None => {
                let t = *times.last().unwrap_or(&1.0);
                i14.observe(i, n.nu(&x, t), Relation::Above, 0.0, || wx(&x, t));
            }
        }
    }
    let mut report = AxiomReport::new("extra conditions");
    report.entries = alloc::vec![i12.finish(), i13.finish(), i14.finish()];
    report
        .notes
        .push("informative only: a failing extra condition is not an axiom violation".into());
    Ok(report)
}
