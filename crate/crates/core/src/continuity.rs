//! Continuity of maps between two spaces at a point: intuitionistic fuzzy
//! continuity (IFC), strong IFC and sequential IFC, their consistency, and
//! compactness of images.

use alloc::format;
use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{check_open_unit, Error, Result};
use crate::linalg::Basis;
use crate::map::MapSpec;
use crate::norm::GifPsiNorm;
use crate::sampler::{derived_seed, log_grid, log_uniform, stream, unit_direction};
use crate::sequence::{check_convergence, extract_convergent_subsequence, DetectorGrid, SequenceSpec};
use crate::sets::{check_compact, CompactReport, SetSpec};
use crate::vector::{self, check_dim};

/// Which threshold convention the IFC implication uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IfcForm {
    /// μ_U > β ⇒ μ_V > α and ν_U < 1 − β ⇒ ν_V < 1 − α.
    #[default]
    Restated,
    /// μ_U > 1 − β ⇒ μ_V > 1 − α and ν_U < β ⇒ ν_V < α.
    Original,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityConfig {
    /// δ candidates; searched from the largest down.
    pub deltas: Vec<f64>,
    pub betas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    /// Seed of the independent verification sample.
    pub verify_seed: u64,
    /// Points are x₀ + r·u with r log-uniform in this range.
    pub radius_range: (f64, f64),
    pub margin: f64,
    pub form: IfcForm,
    /// Bisection steps refining each strong-IFC δ toward the next larger
    /// failing candidate.
    pub refine_steps: usize,
}

impl Default for ContinuityConfig {
    fn default() -> Self {
        ContinuityConfig::with_seed(42)
    }
}

impl ContinuityConfig {
    pub fn with_seed(seed: u64) -> Self {
        ContinuityConfig {
            deltas: log_grid(1e-6, 1e3, 32),
            betas: (1..=9).map(|i| i as f64 / 10.0).collect(),
            samples: 2000,
            seed,
            verify_seed: derived_seed(seed, 0x5EED),
            radius_range: (1e-9, 1e3),
            margin: 1e-12,
            form: IfcForm::Restated,
            refine_steps: 40,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.deltas.is_empty() || self.betas.is_empty() {
            return Err(Error::Domain("δ and β grids must be nonempty".into()));
        }
        if self.deltas.iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
            return Err(Error::Domain("δ candidates must be finite and > 0".into()));
        }
        for &b in &self.betas {
            check_open_unit("beta", b)?;
        }
        if self.samples == 0 {
            return Err(Error::Domain("samples must be >= 1".into()));
        }
        let (lo, hi) = self.radius_range;
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
            return Err(Error::Domain("radius range must satisfy 0 < lo <= hi".into()));
        }
        if !(self.margin >= 0.0) {
            return Err(Error::Domain("margin must be >= 0".into()));
        }
        Ok(())
    }

    fn descending_deltas(&self) -> Vec<f64> {
        let mut d = self.deltas.clone();
        d.sort_by(|a, b| b.total_cmp(a));
        d.dedup();
        d
    }
}

/// Sampled displacement u = x − x₀ with its image displacement f(x) − f(x₀).
struct Probe {
    x: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
}

fn check_maps(f: &MapSpec, x0: &[f64], u: &GifPsiNorm, v: &GifPsiNorm) -> Result<Vec<f64>> {
    check_dim(u.dimension(), x0)?;
    if f.input_dim() != u.dimension() || f.output_dim() != v.dimension() {
        return Err(Error::Shape {
            expected: u.dimension(),
            found: f.input_dim(),
        });
    }
    f.apply(x0)
}

/// Random points around x₀ followed by one point at radius δ·1e-3 along e₁
/// per δ candidate.
fn sample(f: &MapSpec, x0: &[f64], fx0: &[f64], cfg: &ContinuityConfig, seed: u64) -> Vec<Probe> {
    let d = x0.len();
    let (lo, hi) = cfg.radius_range;
    let mut out = Vec::with_capacity(cfg.samples + cfg.deltas.len());
    let make = |u: Vec<f64>| {
        let x = vector::add(x0, &u);
        let v = vector::sub(&f.eval(&x), fx0);
        Probe { x, u, v }
    };
    for i in 0..cfg.samples {
        let mut rng = stream(seed, i);
        let dir = unit_direction(&mut rng, d);
        let r = log_uniform(&mut rng, lo, hi);
        out.push(make(vector::scale(r, &dir)));
    }
    for &delta in &cfg.descending_deltas() {
        out.push(make(vector::scale(delta * 1e-3, &vector::basis_vector(d, 0))));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaRow {
    pub eps: f64,
    /// Largest certified δ, after refinement.
    pub delta: Option<f64>,
    /// Largest certified δ from the candidate grid.
    pub grid_delta: Option<f64>,
    pub witness: Option<StrongWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongWitness {
    pub x: Vec<f64>,
    /// The witness breaks the inequalities for every δ candidate.
    pub violates_all: bool,
    /// The smallest candidate it breaks.
    pub delta: f64,
    pub mu_u: f64,
    pub mu_v: f64,
    pub nu_u: f64,
    pub nu_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongReport {
    pub positive: bool,
    pub table: Vec<DeltaRow>,
}

fn strong_ok(u: &GifPsiNorm, v: &GifPsiNorm, p: &Probe, eps: f64, delta: f64, m: f64) -> bool {
    let (mu_u, nu_u) = u.pair(&p.u, delta);
    let (mu_v, nu_v) = v.pair(&p.v, eps);
    mu_v >= mu_u - m && nu_v <= nu_u + m
}

/// For each ε, the largest δ with μ_V(f(x) − f(x₀), ε) ≥ μ_U(x − x₀, δ) and
/// ν_V ≤ ν_U on both the search and a fresh verification sample.
pub fn check_strongly_ifc(
    f: &MapSpec,
    x0: &[f64],
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    eps_grid: &[f64],
    cfg: &ContinuityConfig,
) -> Result<StrongReport> {
    cfg.validate()?;
    check_eps(eps_grid)?;
    let fx0 = check_maps(f, x0, u, v)?;
    let search = sample(f, x0, &fx0, cfg, cfg.seed);
    let verify = sample(f, x0, &fx0, cfg, cfg.verify_seed);
    let deltas = cfg.descending_deltas();
    let m = cfg.margin;
    let all_ok = |eps: f64, delta: f64| {
        search.iter().chain(&verify).all(|p| strong_ok(u, v, p, eps, delta, m))
    };
    let mut table = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let found = deltas.iter().position(|&d| all_ok(eps, d));
        let row = match found {
            Some(i) => {
                let grid_delta = deltas[i];
                let mut lo = grid_delta;
                if i > 0 {
                    let mut hi = deltas[i - 1];
                    for _ in 0..cfg.refine_steps {
                        let mid = libm::sqrt(lo * hi);
                        if all_ok(eps, mid) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                }
                DeltaRow {
                    eps,
                    delta: Some(lo),
                    grid_delta: Some(grid_delta),
                    witness: None,
                }
            }
            None => DeltaRow {
                eps,
                delta: None,
                grid_delta: None,
                witness: Some(strong_witness(u, v, &search, &deltas, eps, m)),
            },
        };
        table.push(row);
    }
    Ok(StrongReport {
        positive: table.iter().all(|r| r.delta.is_some()),
        table,
    })
}

fn strong_witness(
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    sample: &[Probe],
    deltas: &[f64],
    eps: f64,
    m: f64,
) -> StrongWitness {
    let smallest = *deltas.last().expect("nonempty");
    let build = |p: &Probe, delta: f64, all: bool| {
        let (mu_u, nu_u) = u.pair(&p.u, delta);
        let (mu_v, nu_v) = v.pair(&p.v, eps);
        StrongWitness {
            x: p.x.clone(),
            violates_all: all,
            delta,
            mu_u,
            mu_v,
            nu_u,
            nu_v,
        }
    };
    if let Some(p) = sample
        .iter()
        .find(|p| deltas.iter().all(|&d| !strong_ok(u, v, p, eps, d, m)))
    {
        return build(p, smallest, true);
    }
    // Every δ failed on some point; report the breaker of the smallest δ.
    for &d in deltas.iter().rev() {
        if let Some(p) = sample.iter().find(|p| !strong_ok(u, v, p, eps, d, m)) {
            return build(p, d, false);
        }
    }
    unreachable!("a δ without failures would have been certified")
}

fn check_eps(eps: &[f64]) -> Result<()> {
    if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
        return Err(Error::Domain("ε values must be finite and > 0".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum IfcOutcome {
    Certified { delta: f64, beta: f64 },
    Counterexample(IfcWitness),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IfcWitness {
    pub x: Vec<f64>,
    /// Breaks the implication for every (δ, β) candidate.
    pub violates_all: bool,
    pub delta: f64,
    pub beta: f64,
    pub mu_u: f64,
    pub nu_u: f64,
    pub mu_v: f64,
    pub nu_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IfcReport {
    pub eps: f64,
    pub alpha: f64,
    pub form: IfcForm,
    pub outcome: IfcOutcome,
}

impl IfcReport {
    pub fn certified(&self) -> bool {
        matches!(self.outcome, IfcOutcome::Certified { .. })
    }
}

/// Antecedent thresholds (μ_U above, ν_U below) and consequent thresholds
/// (μ_V above, ν_V below) for one (α, β).
fn thresholds(form: IfcForm, alpha: f64, beta: f64) -> [f64; 4] {
    match form {
        IfcForm::Restated => [beta, 1.0 - beta, alpha, 1.0 - alpha],
        IfcForm::Original => [1.0 - beta, beta, 1.0 - alpha, alpha],
    }
}

/// Antecedents count only when they hold strictly beyond the margin;
/// consequents fail only when they miss by more than the margin, so every
/// reported violation is robust.
fn ifc_ok(u: &GifPsiNorm, v: &GifPsiNorm, p: &Probe, eps: f64, delta: f64, th: [f64; 4], m: f64) -> bool {
    let (mu_u, nu_u) = u.pair(&p.u, delta);
    let (mu_v, nu_v) = v.pair(&p.v, eps);
    let mu_side = !(mu_u > th[0] + m) || mu_v > th[2] - m;
    let nu_side = !(nu_u < th[1] - m) || nu_v < th[3] + m;
    mu_side && nu_side
}

/// Whether one (δ, β) satisfies both implications on the search and the
/// verification samples.
#[allow(clippy::too_many_arguments)]
pub fn ifc_pair_holds(
    f: &MapSpec,
    x0: &[f64],
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    eps: f64,
    alpha: f64,
    delta: f64,
    beta: f64,
    cfg: &ContinuityConfig,
) -> Result<bool> {
    cfg.validate()?;
    check_eps(&[eps, delta])?;
    check_open_unit("alpha", alpha)?;
    check_open_unit("beta", beta)?;
    let fx0 = check_maps(f, x0, u, v)?;
    let th = thresholds(cfg.form, alpha, beta);
    Ok(sample(f, x0, &fx0, cfg, cfg.seed)
        .iter()
        .chain(&sample(f, x0, &fx0, cfg, cfg.verify_seed))
        .all(|p| ifc_ok(u, v, p, eps, delta, th, cfg.margin)))
}

/// Searches β ascending and δ descending for a pair certified on the search
/// sample and then on a fresh verification sample.
pub fn check_ifc(
    f: &MapSpec,
    x0: &[f64],
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    eps: f64,
    alpha: f64,
    cfg: &ContinuityConfig,
) -> Result<IfcReport> {
    cfg.validate()?;
    check_eps(&[eps])?;
    check_open_unit("alpha", alpha)?;
    let fx0 = check_maps(f, x0, u, v)?;
    let search = sample(f, x0, &fx0, cfg, cfg.seed);
    let mut verify: Option<Vec<Probe>> = None;
    let deltas = cfg.descending_deltas();
    let m = cfg.margin;
    let mut betas = cfg.betas.clone();
    betas.sort_by(f64::total_cmp);
    for &beta in &betas {
        let th = thresholds(cfg.form, alpha, beta);
        for &delta in &deltas {
            if !search.iter().all(|p| ifc_ok(u, v, p, eps, delta, th, m)) {
                continue;
            }
            let ver = verify.get_or_insert_with(|| sample(f, x0, &fx0, cfg, cfg.verify_seed));
            if ver.iter().all(|p| ifc_ok(u, v, p, eps, delta, th, m)) {
                return Ok(IfcReport {
                    eps,
                    alpha,
                    form: cfg.form,
                    outcome: IfcOutcome::Certified { delta, beta },
                });
            }
        }
    }
    let breaks = |p: &Probe, delta: f64, beta: f64| {
        !ifc_ok(u, v, p, eps, delta, thresholds(cfg.form, alpha, beta), m)
    };
    let witness = |p: &Probe, delta: f64, beta: f64, all: bool| {
        let (mu_u, nu_u) = u.pair(&p.u, delta);
        let (mu_v, nu_v) = v.pair(&p.v, eps);
        IfcWitness {
            x: p.x.clone(),
            violates_all: all,
            delta,
            beta,
            mu_u,
            nu_u,
            mu_v,
            nu_v,
        }
    };
    let universal = search
        .iter()
        .find(|p| betas.iter().all(|&b| deltas.iter().all(|&d| breaks(p, d, b))));
    let w = match universal {
        Some(p) => witness(p, deltas[deltas.len() - 1], betas[betas.len() - 1], true),
        None => {
            // Every candidate failed somewhere; the breaker of the most
            // permissive candidate.
            let (d, b) = (deltas[deltas.len() - 1], betas[betas.len() - 1]);
            let all = search.iter().chain(verify.iter().flatten());
            let p = all
                .clone()
                .find(|p| breaks(p, d, b))
                .or_else(|| {
                    all.clone()
                        .find(|p| betas.iter().any(|&b| deltas.iter().any(|&d| breaks(p, d, b))))
                })
                .expect("no candidate was certified");
            let (d, b) = betas
                .iter()
                .rev()
                .flat_map(|&b| deltas.iter().rev().map(move |&d| (d, b)))
                .find(|&(d, b)| breaks(p, d, b))
                .expect("the point breaks some candidate");
            witness(p, d, b, false)
        }
    };
    Ok(IfcReport {
        eps,
        alpha,
        form: cfg.form,
        outcome: IfcOutcome::Counterexample(w),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequentialWitness {
    pub member: usize,
    pub n: usize,
    pub x: Vec<f64>,
    pub fx: Vec<f64>,
    pub mu: f64,
    pub nu: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequentialReport {
    pub positive: bool,
    /// Per member: whether f(xₙ) → f(x₀).
    pub members: Vec<bool>,
    pub witness: Option<SequentialWitness>,
    pub horizon: usize,
}

/// Every member must converge to x₀ in U; the verdict is positive when every
/// image sequence converges to f(x₀) in V.
#[allow(clippy::too_many_arguments)]
pub fn check_sequentially_ifc(
    f: &MapSpec,
    x0: &[f64],
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    family: &[SequenceSpec],
    grid: &DetectorGrid,
    horizon: usize,
) -> Result<SequentialReport> {
    let fx0 = check_maps(f, x0, u, v)?;
    if family.is_empty() {
        return Err(Error::Domain("the sequence family must be nonempty".into()));
    }
    for (i, s) in family.iter().enumerate() {
        if !check_convergence(u, s, x0, grid, horizon)?.holds() {
            return Err(Error::Precondition(format!(
                "family member {i} does not converge to x0 up to horizon {horizon}"
            )));
        }
    }
    let mut members = Vec::with_capacity(family.len());
    let mut witness = None;
    for (i, s) in family.iter().enumerate() {
        let image = SequenceSpec::image(s.clone(), f.clone())?;
        let rep = check_convergence(v, &image, &fx0, grid, horizon)?;
        if !rep.holds() && witness.is_none() {
            let cell = rep
                .cells
                .iter()
                .filter(|c| c.last_failure.is_some())
                .max_by_key(|c| c.last_failure)
                .expect("a failing verdict has a failing cell");
            let n = cell.last_failure.expect("filtered");
            let x = s.term(n)?;
            let fx = f.eval(&x);
            let (mu, nu) = v.pair(&vector::sub(&fx, &fx0), cell.t);
            witness = Some(SequentialWitness {
                member: i,
                n,
                x,
                fx,
                mu,
                nu,
                t: cell.t,
            });
        }
        members.push(rep.holds());
    }
    Ok(SequentialReport {
        positive: members.iter().all(|m| *m),
        members,
        witness,
        horizon,
    })
}

/// The (ε, α) grid on which IFC is decided for consistency checks.
pub const IFC_EPS_GRID: [f64; 3] = [0.5, 1.0, 2.0];
pub const IFC_ALPHA_GRID: [f64; 3] = [0.3, 0.6, 0.9];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IffReport {
    pub ifc: Vec<IfcReport>,
    pub ifc_positive: bool,
    pub sequential: SequentialReport,
    pub violation: bool,
}

/// IFC on the (ε, α) grid against sequential IFC; any disagreement is a
/// violation.
#[allow(clippy::too_many_arguments)]
pub fn check_ifc_iff_sequential(
    f: &MapSpec,
    x0: &[f64],
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    family: &[SequenceSpec],
    grid: &DetectorGrid,
    horizon: usize,
    cfg: &ContinuityConfig,
) -> Result<IffReport> {
    let mut ifc = Vec::new();
    for &eps in &IFC_EPS_GRID {
        for &alpha in &IFC_ALPHA_GRID {
            ifc.push(check_ifc(f, x0, u, v, eps, alpha, cfg)?);
        }
    }
    let ifc_positive = ifc.iter().all(IfcReport::certified);
    let sequential = check_sequentially_ifc(f, x0, u, v, family, grid, horizon)?;
    let violation = ifc_positive != sequential.positive;
    Ok(IffReport {
        ifc,
        ifc_positive,
        sequential,
        violation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongSequentialReport {
    pub strong: StrongReport,
    pub sequential: SequentialReport,
    pub violation: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn check_strong_implies_sequential(
    f: &MapSpec,
    x0: &[f64],
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    family: &[SequenceSpec],
    grid: &DetectorGrid,
    horizon: usize,
    cfg: &ContinuityConfig,
) -> Result<StrongSequentialReport> {
    let strong = check_strongly_ifc(f, x0, u, v, &IFC_EPS_GRID, cfg)?;
    let sequential = check_sequentially_ifc(f, x0, u, v, family, grid, horizon)?;
    let violation = strong.positive && !sequential.positive;
    Ok(StrongSequentialReport {
        strong,
        sequential,
        violation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactImageReport {
    pub image_set: SetSpec,
    /// Sequential IFC at each probe's subsequence limit.
    pub sequential: Vec<SequentialReport>,
    pub image: CompactReport,
}

/// Confirms sequential IFC at every probe limit, then runs the compactness
/// battery on f(probe) against the image set.
pub fn check_compact_image(
    f: &MapSpec,
    u: &GifPsiNorm,
    v: &GifPsiNorm,
    set: &SetSpec,
    probes: &[SequenceSpec],
    horizon: usize,
) -> Result<CompactImageReport> {
    let image_set = f.image_set(set)?;
    check_maps(f, &vector::zeros(u.dimension()), u, v)?;
    let grid = DetectorGrid::default();
    let basis = Basis::standard(u.dimension());
    let mut sequential = Vec::with_capacity(probes.len());
    let mut images = Vec::with_capacity(probes.len());
    for (i, p) in probes.iter().enumerate() {
        let ex = extract_convergent_subsequence(u, p, horizon, &basis)?;
        let sub = SequenceSpec::subsequence(p.clone(), ex.indices.clone())?;
        let rep = check_sequentially_ifc(f, &ex.limit, u, v, &[sub], &grid, ex.indices.len())?;
        if !rep.positive {
            return Err(Error::Precondition(format!(
                "the map is not sequentially continuous at the limit of probe {i}"
            )));
        }
        sequential.push(rep);
        images.push(SequenceSpec::image(p.clone(), f.clone())?);
    }
    let image = check_compact(v, &image_set, &images, horizon)?;
    Ok(CompactImageReport {
        image_set,
        sequential,
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FuzzyConnectives;
    use crate::map::ScalarFn;
    use crate::norm::VectorSpaceConfig;

    fn norm() -> GifPsiNorm {
        GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), 1.0, FuzzyConnectives::standard()).unwrap()
    }

    fn small() -> ContinuityConfig {
        ContinuityConfig {
            samples: 300,
            ..ContinuityConfig::default()
        }
    }

    fn family() -> Vec<SequenceSpec> {
        vec![SequenceSpec::affine_decay(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap()]
    }

    #[test]
    fn doubling_is_continuous() {
        let f = MapSpec::scaling(2, 2.0);
        let th = [0.0, 0.0];
        let s = check_strongly_ifc(&f, &th, &norm(), &norm(), &[1.0], &small()).unwrap();
        let d = s.table[0].delta.unwrap();
        assert!((d - 0.5).abs() <= 0.5 * 1e-9, "{d}");
        assert!(ifc_pair_holds(&f, &th, &norm(), &norm(), 1.0, 0.5, 0.5, 0.5, &small()).unwrap());
        assert!(check_ifc(&f, &th, &norm(), &norm(), 1.0, 0.5, &small()).unwrap().certified());
        let q = check_sequentially_ifc(&f, &th, &norm(), &norm(), &family(), &DetectorGrid::default(), 1000)
            .unwrap();
        assert!(q.positive);
    }

    #[test]
    fn radial_normalize_is_not() {
        let f = MapSpec::radial_normalize(2);
        let th = [0.0, 0.0];
        let s = check_strongly_ifc(&f, &th, &norm(), &norm(), &[1.0], &small()).unwrap();
        assert!(!s.positive);
        assert!(s.table[0].witness.as_ref().unwrap().violates_all);
        let r = check_ifc(&f, &th, &norm(), &norm(), 1.0, 0.6, &small()).unwrap();
        match r.outcome {
            IfcOutcome::Counterexample(w) => {
                assert!(w.violates_all);
                assert!((w.mu_v - 0.5).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let q = check_sequentially_ifc(&f, &th, &norm(), &norm(), &family(), &DetectorGrid::default(), 1000)
            .unwrap();
        assert!(!q.positive);
        let w = q.witness.unwrap();
        assert_eq!(w.mu, w.t / (w.t + 1.0));
    }

    #[test]
    fn sequential_precondition_names_member() {
        let f = MapSpec::identity(2);
        let bad = SequenceSpec::constant(vec![1.0, 0.0]).unwrap();
        let fam = vec![family().remove(0), bad];
        let e = check_sequentially_ifc(&f, &[0.0, 0.0], &norm(), &norm(), &fam, &DetectorGrid::default(), 1000);
        assert!(matches!(e, Err(Error::Precondition(ref m)) if m.contains("member 1")));
    }

    #[test]
    fn sign_is_discontinuous() {
        let f = MapSpec::componentwise(2, ScalarFn::Sign);
        let r = check_ifc_iff_sequential(
            &f,
            &[0.0, 0.0],
            &norm(),
            &norm(),
            &family(),
            &DetectorGrid::default(),
            1000,
            &small(),
        )
        .unwrap();
        assert!(!r.ifc_positive && !r.sequential.positive && !r.violation);
    }

    #[test]
    fn images_of_balls() {
        let ball = SetSpec::closed_ball(vec![0.0, 0.0], 1.0).unwrap();
        let probe = SequenceSpec::affine_decay(vec![0.5, 0.0], vec![0.5, 0.0]).unwrap();
        let r = check_compact_image(&MapSpec::scaling(2, 2.0), &norm(), &norm(), &ball, &[probe], 1000).unwrap();
        assert!(r.image.compatible);
        assert!(r.image_set.contains(&[2.0, 0.0]) && !r.image_set.contains(&[2.1, 0.0]));
        assert!(matches!(
            check_compact_image(&MapSpec::radial_normalize(2), &norm(), &norm(), &ball, &[], 10),
            Err(Error::Unsupported(_))
        ));
    }
}
