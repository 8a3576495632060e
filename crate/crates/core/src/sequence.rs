//! Sequences in ℝᵈ and finite-horizon detectors for convergence, the Cauchy
//! property and boundedness, plus Bolzano–Weierstrass subsequence
//! extraction and coordinate-limit reconstruction.
//!
//! Every "for all n ≥ n₀" is checked on the window [n₀, N]; reports carry
//! the horizon N in their scope label.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{check_open_unit, Error, Result};
use crate::linalg::Basis;
use crate::map::MapSpec;
use crate::norm::GifPsiNorm;
use crate::sampler::log_grid;
use crate::vector::{self, check_dim, sub_into};

/// Strict inequalities μ > 1 − r and ν < r are decided with this margin.
pub const STRICT_MARGIN: f64 = 1e-12;

/// An affine tail b + v/n.
#[derive(Debug, Clone, PartialEq)]
pub struct Tail {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    /// b + v/n.
    AffineDecay { base: Vec<f64>, direction: Vec<f64> },
    /// b + v·qⁿ.
    Geometric { base: Vec<f64>, direction: Vec<f64>, ratio: f64 },
    /// `even` tail at even n, `odd` tail at odd n.
    Oscillating { even: Tail, odd: Tail },
    /// b + n·v.
    Arithmetic { base: Vec<f64>, direction: Vec<f64> },
    /// b + sin(ωn)·v.
    Sinusoid { base: Vec<f64>, direction: Vec<f64>, frequency: f64 },
    /// c + (ρ − κ/nᵖ)(cos ωn, sin ωn, 0, …).
    Spiral { center: Vec<f64>, radius: f64, decay: f64, power: f64, frequency: f64 },
    /// x₁, …, x_len.
    Explicit { terms: Vec<Vec<f64>> },
    Sum(Box<SequenceSpec>, Box<SequenceSpec>),
    Scaled { c: f64, inner: Box<SequenceSpec> },
    /// f(xₙ).
    Image { inner: Box<SequenceSpec>, map: MapSpec },
    /// x_{n_k} for strictly increasing 1-based indices.
    Subsequence { inner: Box<SequenceSpec>, indices: Vec<usize> },
}

/// A finitely evaluable sequence x₁, x₂, … in ℝᵈ.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    kind: SequenceKind,
    dimension: usize,
}

fn same_dims(a: &[f64], b: &[f64]) -> Result<usize> {
    if a.is_empty() {
        return Err(Error::Domain("sequence dimension must be >= 1".into()));
    }
    check_dim(a.len(), b)?;
    Ok(a.len())
}

impl SequenceSpec {
    pub fn affine_decay(base: Vec<f64>, direction: Vec<f64>) -> Result<Self> {
        let dimension = same_dims(&base, &direction)?;
        Ok(SequenceSpec {
            kind: SequenceKind::AffineDecay { base, direction },
            dimension,
        })
    }

    pub fn geometric(base: Vec<f64>, direction: Vec<f64>, ratio: f64) -> Result<Self> {
        let dimension = same_dims(&base, &direction)?;
        if !ratio.is_finite() {
            return Err(Error::Domain("geometric ratio must be finite".into()));
        }
        Ok(SequenceSpec {
            kind: SequenceKind::Geometric { base, direction, ratio },
            dimension,
        })
    }

    pub fn oscillating(even: Tail, odd: Tail) -> Result<Self> {
        let dimension = same_dims(&even.base, &even.direction)?;
        check_dim(dimension, &odd.base)?;
        check_dim(dimension, &odd.direction)?;
        Ok(SequenceSpec {
            kind: SequenceKind::Oscillating { even, odd },
            dimension,
        })
    }

    pub fn arithmetic(base: Vec<f64>, direction: Vec<f64>) -> Result<Self> {
        let dimension = same_dims(&base, &direction)?;
        Ok(SequenceSpec {
            kind: SequenceKind::Arithmetic { base, direction },
            dimension,
        })
    }

    pub fn sinusoid(base: Vec<f64>, direction: Vec<f64>, frequency: f64) -> Result<Self> {
        let dimension = same_dims(&base, &direction)?;
        Ok(SequenceSpec {
            kind: SequenceKind::Sinusoid { base, direction, frequency },
            dimension,
        })
    }

    pub fn spiral(center: Vec<f64>, radius: f64, decay: f64, power: f64, frequency: f64) -> Result<Self> {
        if center.len() < 2 {
            return Err(Error::Domain("a spiral needs dimension >= 2".into()));
        }
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::Domain("spiral decay power must be finite and > 0".into()));
        }
        Ok(SequenceSpec {
            dimension: center.len(),
            kind: SequenceKind::Spiral { center, radius, decay, power, frequency },
        })
    }

    pub fn constant(x: Vec<f64>) -> Result<Self> {
        let d = x.len();
        SequenceSpec::affine_decay(x, vector::zeros(d))
    }

    pub fn explicit(terms: Vec<Vec<f64>>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Domain("explicit sequence needs at least one term".into()))?;
        let dimension = first.len();
        if dimension == 0 {
            return Err(Error::Domain("sequence dimension must be >= 1".into()));
        }
        for t in &terms {
            check_dim(dimension, t)?;
        }
        Ok(SequenceSpec {
            kind: SequenceKind::Explicit { terms },
            dimension,
        })
    }

    pub fn sum(a: SequenceSpec, b: SequenceSpec) -> Result<Self> {
        if a.dimension != b.dimension {
            return Err(Error::Shape {
                expected: a.dimension,
                found: b.dimension,
            });
        }
        Ok(SequenceSpec {
            dimension: a.dimension,
            kind: SequenceKind::Sum(Box::new(a), Box::new(b)),
        })
    }

    pub fn scaled(c: f64, inner: SequenceSpec) -> Self {
        SequenceSpec {
            dimension: inner.dimension,
            kind: SequenceKind::Scaled {
                c,
                inner: Box::new(inner),
            },
        }
    }

    pub fn image(inner: SequenceSpec, map: MapSpec) -> Result<Self> {
        if map.input_dim() != inner.dimension {
            return Err(Error::Shape {
                expected: map.input_dim(),
                found: inner.dimension,
            });
        }
        Ok(SequenceSpec {
            dimension: map.output_dim(),
            kind: SequenceKind::Image {
                inner: Box::new(inner),
                map,
            },
        })
    }

    pub fn subsequence(inner: SequenceSpec, indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() || indices[0] == 0 || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "subsequence indices must be nonempty, 1-based and strictly increasing".into(),
            ));
        }
        if let Some(len) = inner.len() {
            if *indices.last().unwrap_or(&0) > len {
                return Err(Error::Horizon(format!(
                    "subsequence index beyond the {len} available terms"
                )));
            }
        }
        Ok(SequenceSpec {
            dimension: inner.dimension,
            kind: SequenceKind::Subsequence {
                inner: Box::new(inner),
                indices,
            },
        })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of available terms, if finite.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Explicit { terms } => Some(terms.len()),
            SequenceKind::Subsequence { indices, .. } => Some(indices.len()),
            SequenceKind::Sum(a, b) => match (a.len(), b.len()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
            SequenceKind::Scaled { inner, .. } | SequenceKind::Image { inner, .. } => inner.len(),
            _ => None,
        }
    }

    /// xₙ for n ≥ 1.
    pub fn term(&self, n: usize) -> Result<Vec<f64>> {
        self.check_horizon(n)?;
        if n == 0 {
            return Err(Error::Domain("sequence indices start at 1".into()));
        }
        let mut out = vector::zeros(self.dimension);
        self.eval_into(n, &mut out);
        Ok(out)
    }

    pub(crate) fn check_horizon(&self, n: usize) -> Result<()> {
        match self.len() {
            Some(len) if n > len => Err(Error::Horizon(format!(
                "horizon {n} exceeds the {len} available terms"
            ))),
            _ => Ok(()),
        }
    }

    /// Writes xₙ into `out` (length `dimension`). Allocation-free for the
    /// closed-form kinds.
    pub fn eval_into(&self, n: usize, out: &mut [f64]) {
        let nf = n as f64;
        match &self.kind {
            SequenceKind::AffineDecay { base, direction } => {
                for ((o, b), v) in out.iter_mut().zip(base).zip(direction) {
                    *o = b + v / nf;
                }
            }
            SequenceKind::Geometric { base, direction, ratio } => {
                let q = libm::pow(*ratio, nf);
                for ((o, b), v) in out.iter_mut().zip(base).zip(direction) {
                    *o = b + v * q;
                }
            }
            SequenceKind::Oscillating { even, odd } => {
                let tail = if n.is_multiple_of(2) { even } else { odd };
                for ((o, b), v) in out.iter_mut().zip(&tail.base).zip(&tail.direction) {
                    *o = b + v / nf;
                }
            }
            SequenceKind::Arithmetic { base, direction } => {
                for ((o, b), v) in out.iter_mut().zip(base).zip(direction) {
                    *o = b + nf * v;
                }
            }
            SequenceKind::Sinusoid { base, direction, frequency } => {
                let s = libm::sin(frequency * nf);
                for ((o, b), v) in out.iter_mut().zip(base).zip(direction) {
                    *o = b + s * v;
                }
            }
            SequenceKind::Spiral { center, radius, decay, power, frequency } => {
                let rho = if *power == 1.0 { radius - decay / nf } else { radius - decay / libm::pow(nf, *power) };
                out.copy_from_slice(center);
                out[0] += rho * libm::cos(frequency * nf);
                out[1] += rho * libm::sin(frequency * nf);
            }
            SequenceKind::Explicit { terms } => out.copy_from_slice(&terms[n - 1]),
            SequenceKind::Sum(a, b) => {
                a.eval_into(n, out);
                let mut tmp = vector::zeros(self.dimension);
                b.eval_into(n, &mut tmp);
                for (o, t) in out.iter_mut().zip(&tmp) {
                    *o += t;
                }
            }
            SequenceKind::Scaled { c, inner } => {
                inner.eval_into(n, out);
                out.iter_mut().for_each(|o| *o *= c);
            }
            SequenceKind::Image { inner, map } => {
                let mut tmp = vector::zeros(inner.dimension);
                inner.eval_into(n, &mut tmp);
                out.copy_from_slice(&map.eval(&tmp));
            }
            SequenceKind::Subsequence { inner, indices } => inner.eval_into(indices[n - 1], out),
        }
    }

    /// The first `n` terms.
    pub fn terms(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        self.check_horizon(n)?;
        Ok((1..=n)
            .map(|i| {
                let mut v = vector::zeros(self.dimension);
                self.eval_into(i, &mut v);
                v
            })
            .collect())
    }
}

/// The (r, t) cells a detector decides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectorGrid {
    pub r: Vec<f64>,
    pub t: Vec<f64>,
}

impl Default for DetectorGrid {
    fn default() -> Self {
        DetectorGrid {
            r: vec![0.1, 0.05],
            t: vec![1.0, 0.1],
        }
    }
}

impl DetectorGrid {
    pub fn new(r: Vec<f64>, t: Vec<f64>) -> Result<Self> {
        let g = DetectorGrid { r, t };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r.is_empty() || self.t.is_empty() {
            return Err(Error::Domain("detector grids must be nonempty".into()));
        }
        for &r in &self.r {
            check_open_unit("r", r)?;
        }
        if self.t.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(Error::Domain("grid t values must be finite and > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Convergence,
    Cauchy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub r: f64,
    pub t: f64,
    /// First index from which the inequalities hold on [n₀, N]; `None`
    /// when they fail at N itself.
    pub n0: Option<usize>,
    pub last_failure: Option<usize>,
    /// Failures inside the final tenth of the window.
    pub late_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub n: usize,
    pub t: f64,
    pub mu: f64,
    pub nu: f64,
}

/// μ and ν at the horizon against the limit-form thresholds 1 − ε and ε.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitFormRow {
    pub t: f64,
    pub epsilon: f64,
    pub mu: f64,
    pub nu: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub property: Property,
    pub verdict: Verdict,
    pub candidate_limit: Option<Vec<f64>>,
    pub horizon: usize,
    pub p_max: Option<usize>,
    pub cells: Vec<Cell>,
    pub trajectories: Vec<TrajectoryPoint>,
    pub limit_form: Vec<LimitFormRow>,
    pub scope: String,
}

impl ConvergenceReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn cell(&self, r: f64, t: f64) -> Option<&Cell> {
        self.cells.iter().find(|c| c.r == r && c.t == t)
    }
}

fn check_window(seq: &SequenceSpec, horizon: usize) -> Result<()> {
    if horizon < 10 {
        return Err(Error::Horizon(format!("horizon N = {horizon} must be >= 10")));
    }
    seq.check_horizon(horizon)
}

/// Start of the final tenth of a window of length `horizon`.
fn late_cut(horizon: usize) -> usize {
    horizon - horizon / 10
}

/// Holds when every cell's n₀ leaves at least the final tenth of the window
/// verified; fails when some cell fails at N or fails repeatedly in the
/// final tenth; otherwise inconclusive.
fn verdict(cells: &[Cell], horizon: usize) -> Verdict {
    let cut = late_cut(horizon);
    if cells.iter().all(|c| c.n0.is_some_and(|n0| n0 <= cut)) {
        Verdict::Holds
    } else if cells.iter().any(|c| c.n0.is_none() || c.late_failures >= 2) {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    }
}

#[inline]
fn passes(mu: f64, nu: f64, r: f64) -> bool {
    mu > 1.0 - r + STRICT_MARGIN && nu < r - STRICT_MARGIN
}

fn trajectory_indices(horizon: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = log_grid(1.0, horizon as f64, 16)
        .into_iter()
        .map(|v| (libm::round(v) as usize).clamp(1, horizon))
        .collect();
    idx.push(horizon);
    idx.dedup();
    idx
}

fn scope(horizon: usize) -> String {
    format!("up to horizon N = {horizon}")
}

/// Decides μ(xₙ − x, t) > 1 − r and ν(xₙ − x, t) < r on [n₀, N] for every
/// grid cell.
pub fn check_convergence(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    x: &[f64],
    grid: &DetectorGrid,
    horizon: usize,
) -> Result<ConvergenceReport> {
    grid.validate()?;
    check_dim(norm.dimension(), x)?;
    check_dim(norm.dimension(), &vector::zeros(seq.dimension()))?;
    check_window(seq, horizon)?;
    let d = seq.dimension();
    let (nt, nr) = (grid.t.len(), grid.r.len());
    let cut = late_cut(horizon);
    let mut last = vec![None; nt * nr];
    let mut late = vec![0usize; nt * nr];
    let mut term = vector::zeros(d);
    let mut diff = vector::zeros(d);
    let mut pairs = vec![(0.0, 0.0); nt];
    let traj_idx = trajectory_indices(horizon);
    let mut trajectories = Vec::new();
    let mut ti = 0;
    for n in 1..=horizon {
        seq.eval_into(n, &mut term);
        sub_into(&term, x, &mut diff);
        norm.pairs_into(&diff, &grid.t, &mut pairs);
        for (it, &(mu, nu)) in pairs.iter().enumerate() {
            for (ir, &r) in grid.r.iter().enumerate() {
                if !passes(mu, nu, r) {
                    last[it * nr + ir] = Some(n);
                    if n > cut {
                        late[it * nr + ir] += 1;
                    }
                }
            }
        }
        if ti < traj_idx.len() && traj_idx[ti] == n {
            for (&t, &(mu, nu)) in grid.t.iter().zip(&pairs) {
                trajectories.push(TrajectoryPoint { n, t, mu, nu });
            }
            ti += 1;
        }
    }
    let cells = cells_from(grid, &last, &late, horizon);
    let eps = grid.r.iter().copied().fold(f64::INFINITY, f64::min);
    seq.eval_into(horizon, &mut term);
    sub_into(&term, x, &mut diff);
    let limit_form = grid
        .t
        .iter()
        .map(|&t| {
            let (mu, nu) = norm.pair(&diff, t);
            LimitFormRow {
                t,
                epsilon: eps,
                mu,
                nu,
                holds: mu >= 1.0 - eps && nu <= eps,
            }
        })
        .collect();
    Ok(ConvergenceReport {
        property: Property::Convergence,
        verdict: verdict(&cells, horizon),
        candidate_limit: Some(x.to_vec()),
        horizon,
        p_max: None,
        cells,
        trajectories,
        limit_form,
        scope: scope(horizon),
    })
}

fn cells_from(grid: &DetectorGrid, last: &[Option<usize>], late: &[usize], horizon: usize) -> Vec<Cell> {
    let nr = grid.r.len();
    let mut cells = Vec::with_capacity(last.len());
    for (it, &t) in grid.t.iter().enumerate() {
        for (ir, &r) in grid.r.iter().enumerate() {
            let lf = last[it * nr + ir];
            let n0 = match lf {
                None => Some(1),
                Some(n) if n >= horizon => None,
                Some(n) => Some(n + 1),
            };
            cells.push(Cell {
                r,
                t,
                n0,
                last_failure: lf,
                late_failures: late[it * nr + ir],
            });
        }
    }
    cells
}

/// Decides μ(x_{n+p} − xₙ, t) > 1 − r and ν < r for all n in [n₀, N] and
/// offsets 1 ≤ p ≤ p_max with n + p ≤ N. `p_max = None` uses the whole
/// window.
pub fn check_cauchy(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    grid: &DetectorGrid,
    horizon: usize,
    p_max: Option<usize>,
) -> Result<ConvergenceReport> {
    grid.validate()?;
    check_dim(norm.dimension(), &vector::zeros(seq.dimension()))?;
    check_window(seq, horizon)?;
    let p_max = p_max.unwrap_or(horizon - 1);
    if p_max == 0 {
        return Err(Error::Domain("p_max must be >= 1".into()));
    }
    let d = seq.dimension();
    let points = seq.terms(horizon)?;
    let (nt, nr) = (grid.t.len(), grid.r.len());
    let cut = late_cut(horizon);
    let mut last: Vec<Option<usize>> = vec![None; nt * nr];
    let mut late = vec![0usize; nt * nr];
    let mut diff = vector::zeros(d);
    let mut pairs = vec![(0.0, 0.0); nt];
    let mut worst = vec![(1.0f64, 0.0f64); nt];
    let mut traj = Vec::new();
    let traj_idx = trajectory_indices(horizon);

    for n in (1..horizon).rev() {
        let settled = last.iter().all(|l| l.is_some()) && n <= cut;
        if settled && !traj_idx.contains(&n) {
            if traj_idx.iter().all(|&i| i > n) {
                break;
            }
            continue;
        }
        worst.iter_mut().for_each(|w| *w = (1.0, 0.0));
        let top = (n + p_max).min(horizon);
        for m in n + 1..=top {
            sub_into(&points[m - 1], &points[n - 1], &mut diff);
            norm.pairs_into(&diff, &grid.t, &mut pairs);
            for (w, &(mu, nu)) in worst.iter_mut().zip(&pairs) {
                w.0 = w.0.min(mu);
                w.1 = w.1.max(nu);
            }
        }
        for (it, &(mu, nu)) in worst.iter().enumerate() {
            for (ir, &r) in grid.r.iter().enumerate() {
                if !passes(mu, nu, r) {
                    let k = it * nr + ir;
                    if last[k].is_none() {
                        last[k] = Some(n);
                    }
                    if n > cut {
                        late[k] += 1;
                    }
                }
            }
        }
        if traj_idx.contains(&n) {
            for (&t, &(mu, nu)) in grid.t.iter().zip(&worst) {
                traj.push(TrajectoryPoint { n, t, mu, nu });
            }
        }
    }
    traj.reverse();
    let cells = cells_from(grid, &last, &late, horizon);
    Ok(ConvergenceReport {
        property: Property::Cauchy,
        verdict: verdict(&cells, horizon),
        candidate_limit: None,
        horizon,
        p_max: Some(p_max),
        cells,
        trajectories: traj,
        limit_form: Vec::new(),
        scope: scope(horizon),
    })
}

/// Both detectors on one sequence; a violation is a convergent sequence
/// the Cauchy detector rejects.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedReport {
    pub convergence: ConvergenceReport,
    pub cauchy: ConvergenceReport,
    pub violation: bool,
}

pub fn check_convergent_implies_cauchy(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    x: &[f64],
    grid: &DetectorGrid,
    horizon: usize,
    p_max: Option<usize>,
) -> Result<PairedReport> {
    let convergence = check_convergence(norm, seq, x, grid, horizon)?;
    let cauchy = check_cauchy(norm, seq, grid, horizon, p_max)?;
    let violation = convergence.verdict == Verdict::Holds && cauchy.verdict == Verdict::Fails;
    Ok(PairedReport {
        convergence,
        cauchy,
        violation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArithmeticReport {
    pub sum: ConvergenceReport,
    pub scaled: ConvergenceReport,
    pub scalar: f64,
    pub violation: bool,
}

/// With s₁ → x and s₂ → y verified, checks s₁ + s₂ → x + y and c·s₁ → c·x.
#[allow(clippy::too_many_arguments)]
pub fn check_limit_arithmetic(
    norm: &GifPsiNorm,
    s1: &SequenceSpec,
    s2: &SequenceSpec,
    x: &[f64],
    y: &[f64],
    c: f64,
    grid: &DetectorGrid,
    horizon: usize,
) -> Result<ArithmeticReport> {
    if c == 0.0 || !c.is_finite() {
        return Err(Error::Domain("the scalar must be finite and nonzero".into()));
    }
    for (name, s, l) in [("first", s1, x), ("second", s2, y)] {
        if !check_convergence(norm, s, l, grid, horizon)?.holds() {
            return Err(Error::Precondition(format!(
                "the {name} sequence is not verified to converge to its stated limit"
            )));
        }
    }
    let sum = check_convergence(
        norm,
        &SequenceSpec::sum(s1.clone(), s2.clone())?,
        &vector::add(x, y),
        grid,
        horizon,
    )?;
    let scaled = check_convergence(
        norm,
        &SequenceSpec::scaled(c, s1.clone()),
        &vector::scale(c, x),
        grid,
        horizon,
    )?;
    let violation = !sum.holds() || !scaled.holds();
    Ok(ArithmeticReport {
        sum,
        scaled,
        scalar: c,
        violation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub first: ConvergenceReport,
    pub second: ConvergenceReport,
    pub violation: bool,
}

/// Runs the convergence detector against two distinct candidates; both
/// holding is a violation.
pub fn check_limit_uniqueness(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    x: &[f64],
    y: &[f64],
    grid: &DetectorGrid,
    horizon: usize,
) -> Result<UniquenessReport> {
    if x == y {
        return Err(Error::Domain("uniqueness needs two distinct candidates".into()));
    }
    let first = check_convergence(norm, seq, x, grid, horizon)?;
    let second = check_convergence(norm, seq, y, grid, horizon)?;
    let violation = first.holds() && second.holds();
    Ok(UniquenessReport {
        first,
        second,
        violation,
    })
}

/// Search grids for a boundedness certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSearch {
    pub t: Vec<f64>,
    pub r: Vec<f64>,
}

impl Default for BoundSearch {
    fn default() -> Self {
        BoundSearch {
            t: log_grid(1e-3, 1e6, 28),
            r: vec![0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99],
        }
    }
}

impl BoundSearch {
    pub fn validate(&self) -> Result<()> {
        DetectorGrid {
            r: self.r.clone(),
            t: self.t.clone(),
        }
        .validate()
    }
}

/// A single (t, r) with μ(xₙ, t) > 1 − r and ν(xₙ, t) < r for all n ≤ N.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub t: f64,
    pub r: f64,
    pub min_mu: f64,
    pub max_nu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedReport {
    pub certificate: Option<BoundCertificate>,
    pub horizon: usize,
    pub max_crisp_norm: f64,
    pub scope: String,
}

/// Searches t in the given order, then r, for a boundedness certificate
/// over the first N terms.
pub fn check_bounded(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    horizon: usize,
    search: &BoundSearch,
) -> Result<BoundedReport> {
    search.validate()?;
    check_dim(norm.dimension(), &vector::zeros(seq.dimension()))?;
    if horizon == 0 {
        return Err(Error::Horizon("horizon must be >= 1".into()));
    }
    seq.check_horizon(horizon)?;
    let d = seq.dimension();
    let nt = search.t.len();
    let mut worst = vec![(1.0f64, 0.0f64); nt];
    let mut pairs = vec![(0.0, 0.0); nt];
    let mut term = vector::zeros(d);
    let mut max_crisp = 0.0f64;
    for n in 1..=horizon {
        seq.eval_into(n, &mut term);
        max_crisp = max_crisp.max(norm.crisp(&term));
        norm.pairs_into(&term, &search.t, &mut pairs);
        for (w, &(mu, nu)) in worst.iter_mut().zip(&pairs) {
            w.0 = w.0.min(mu);
            w.1 = w.1.max(nu);
        }
    }
    let certificate = search.t.iter().zip(&worst).find_map(|(&t, &(min_mu, max_nu))| {
        search
            .r
            .iter()
            .find(|&&r| passes(min_mu, max_nu, r))
            .map(|&r| BoundCertificate {
                t,
                r,
                min_mu,
                max_nu,
            })
    });
    Ok(BoundedReport {
        certificate,
        horizon,
        max_crisp_norm: max_crisp,
        scope: scope(horizon),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CauchyBoundedReport {
    pub cauchy: ConvergenceReport,
    pub bounded: BoundedReport,
    pub violation: bool,
}

/// A sequence the Cauchy detector accepts must obtain a certificate.
pub fn check_cauchy_implies_bounded(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    grid: &DetectorGrid,
    horizon: usize,
    p_max: Option<usize>,
    search: &BoundSearch,
) -> Result<CauchyBoundedReport> {
    let cauchy = check_cauchy(norm, seq, grid, horizon, p_max)?;
    let bounded = check_bounded(norm, seq, horizon, search)?;
    let violation = cauchy.holds() && bounded.certificate.is_none();
    Ok(CauchyBoundedReport {
        cauchy,
        bounded,
        violation,
    })
}

/// Coordinate spread below which range halving stops.
pub const SPREAD_TOLERANCE: f64 = 1e-6;
/// A coordinate is unbounded when its second-half supremum exceeds both
/// this multiple of the first-half supremum and 1.
pub const GROWTH_RATIO: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extraction {
    /// 1-based indices into the original sequence, strictly increasing.
    pub indices: Vec<usize>,
    /// Σ βᵢ eᵢ over the coordinate limits.
    pub limit: Vec<f64>,
    pub coordinate_limit: Vec<f64>,
    /// Number of halving steps.
    pub levels: usize,
    /// Coordinate spreads of the final nested set.
    pub final_spread: Vec<f64>,
    pub verification: ConvergenceReport,
}

fn coordinates(seq: &SequenceSpec, basis: &Basis, horizon: usize) -> Result<Vec<Vec<f64>>> {
    let mut term = vector::zeros(seq.dimension());
    (1..=horizon)
        .map(|n| {
            seq.eval_into(n, &mut term);
            basis.coordinates(&term)
        })
        .collect()
}

fn check_growth(coords: &[Vec<f64>]) -> Result<()> {
    let d = coords.first().map_or(0, |c| c.len());
    let half = coords.len() / 2;
    for j in 0..d {
        let sup = |s: &[Vec<f64>]| s.iter().fold(0.0f64, |m, c| m.max(libm::fabs(c[j])));
        if coords.iter().any(|c| !c[j].is_finite()) {
            return Err(Error::Unbounded {
                coordinate: j,
                growth: f64::INFINITY,
            });
        }
        let (a, b) = (sup(&coords[..half]), sup(&coords[half..]));
        if b > GROWTH_RATIO * a && b > 1.0 {
            return Err(Error::Unbounded {
                coordinate: j,
                growth: if a > 0.0 { b / a } else { f64::INFINITY },
            });
        }
    }
    Ok(())
}

fn spreads(coords: &[Vec<f64>], set: &[usize], d: usize) -> Vec<(f64, f64)> {
    (0..d)
        .map(|j| {
            set.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &n| {
                let v = coords[n - 1][j];
                (lo.min(v), hi.max(v))
            })
        })
        .collect()
}

/// Coordinate-wise Bolzano–Weierstrass over the first N terms: repeatedly
/// halves the range of the coordinate with the largest spread and keeps the
/// more populated half (ties keep the half holding the largest index), then
/// picks one index per nested level, ascending. The limit is the mean of the
/// final set, and the subsequence is re-verified against it.
pub fn extract_convergent_subsequence(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    horizon: usize,
    basis: &Basis,
) -> Result<Extraction> {
    extract_with_grid(norm, seq, horizon, basis, &DetectorGrid::default())
}

pub fn extract_with_grid(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    horizon: usize,
    basis: &Basis,
    grid: &DetectorGrid,
) -> Result<Extraction> {
    let d = seq.dimension();
    check_dim(d, &vector::zeros(basis.dimension()))?;
    check_dim(norm.dimension(), &vector::zeros(d))?;
    if horizon < 10 {
        return Err(Error::Horizon(format!("horizon N = {horizon} must be >= 10")));
    }
    seq.check_horizon(horizon)?;
    let coords = coordinates(seq, basis, horizon)?;
    check_growth(&coords)?;

    // Classical interleaving: halve, keep the half with more terms beyond
    // the last pick, pick its first such term.
    let mut set: Vec<usize> = (1..=horizon).collect();
    let mut indices: Vec<usize> = Vec::new();
    let mut last = 0usize;
    let mut levels = 0usize;
    loop {
        let sp = spreads(&coords, &set, d);
        let (j, (lo, hi)) = sp
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| (a.1 .1 - a.1 .0).total_cmp(&(b.1 .1 - b.1 .0)))
            .expect("dimension >= 1");
        if hi - lo < SPREAD_TOLERANCE || set.len() == 1 {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        let (lower, upper): (Vec<usize>, Vec<usize>) =
            set.iter().partition(|&&n| coords[n - 1][j] <= mid);
        let ahead = |h: &[usize]| h.iter().filter(|&&n| n > last).count();
        let (a_lo, a_up) = (ahead(&lower), ahead(&upper));
        if a_lo == 0 && a_up == 0 {
            break;
        }
        let keep_upper = match a_up.cmp(&a_lo) {
            core::cmp::Ordering::Greater => true,
            core::cmp::Ordering::Less => false,
            core::cmp::Ordering::Equal => upper.last() > lower.last(),
        };
        set = if keep_upper { upper } else { lower };
        levels += 1;
        last = *set.iter().find(|&&n| n > last).expect("counted above");
        indices.push(last);
    }
    indices.extend(set.iter().copied().filter(|&n| n > last));
    let final_set = set;
    let final_spread = spreads(&coords, &final_set, d).iter().map(|(lo, hi)| hi - lo).collect();
    let coordinate_limit: Vec<f64> = (0..d)
        .map(|j| final_set.iter().map(|&n| coords[n - 1][j]).sum::<f64>() / final_set.len() as f64)
        .collect();
    let limit = basis.combine(&coordinate_limit)?;

    if indices.len() < 10 {
        return Err(Error::Horizon(format!(
            "only {} subsequence terms at horizon {horizon}; increase N",
            indices.len()
        )));
    }
    let sub = SequenceSpec::subsequence(seq.clone(), indices.clone())?;
    let verification = check_convergence(norm, &sub, &limit, grid, indices.len())?;
    if !verification.holds() {
        return Err(Error::Unverified(format!(
            "extracted subsequence of {} terms does not pass the convergence check against its limit",
            indices.len()
        )));
    }
    Ok(Extraction {
        indices,
        limit,
        coordinate_limit,
        levels,
        final_spread,
        verification,
    })
}

/// Tail-gap tolerance for coordinate limits.
pub const TAIL_GAP: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconstruction {
    pub limit: Vec<f64>,
    pub coordinate_limit: Vec<f64>,
    /// Largest coordinate spread over the final tenth of the window.
    pub tail_gap: f64,
    pub tail_start: usize,
    pub verification: ConvergenceReport,
}

/// Expands xₙ in `basis`, takes each coordinate limit as the mean over the
/// final tenth of the window once that tail's spread is below [`TAIL_GAP`],
/// and verifies convergence of the sequence to Σ βᵢ eᵢ.
pub fn coordinate_limit_reconstruction(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    basis: &Basis,
    horizon: usize,
) -> Result<Reconstruction> {
    reconstruct_with_grid(norm, seq, basis, horizon, &DetectorGrid::default())
}

pub fn reconstruct_with_grid(
    norm: &GifPsiNorm,
    seq: &SequenceSpec,
    basis: &Basis,
    horizon: usize,
    grid: &DetectorGrid,
) -> Result<Reconstruction> {
    let d = seq.dimension();
    check_dim(d, &vector::zeros(basis.dimension()))?;
    check_window(seq, horizon)?;
    let start = late_cut(horizon) + 1;
    let mut term = vector::zeros(d);
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    let mut sum = vec![0.0; d];
    for n in start..=horizon {
        seq.eval_into(n, &mut term);
        let beta = basis.coordinates(&term)?;
        for j in 0..d {
            lo[j] = lo[j].min(beta[j]);
            hi[j] = hi[j].max(beta[j]);
            sum[j] += beta[j];
        }
    }
    let count = (horizon - start + 1) as f64;
    let mut tail_gap = 0.0f64;
    for j in 0..d {
        let gap = hi[j] - lo[j];
        if !(gap < TAIL_GAP) {
            return Err(Error::Reconstruction {
                coordinate: j,
                gap,
                tolerance: TAIL_GAP,
            });
        }
        tail_gap = tail_gap.max(gap);
    }
    let coordinate_limit: Vec<f64> = sum.iter().map(|s| s / count).collect();
    let limit = basis.combine(&coordinate_limit)?;
    let verification = check_convergence(norm, seq, &limit, grid, horizon)?;
    if !verification.holds() {
        return Err(Error::Unverified(
            "reconstructed limit does not pass the convergence check".into(),
        ));
    }
    Ok(Reconstruction {
        limit,
        coordinate_limit,
        tail_gap,
        tail_start: start,
        verification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FuzzyConnectives;
    use crate::norm::VectorSpaceConfig;

    fn norm() -> GifPsiNorm {
        GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), 1.0, FuzzyConnectives::standard()).unwrap()
    }

    fn harmonic() -> SequenceSpec {
        SequenceSpec::affine_decay(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap()
    }

    fn alternating() -> SequenceSpec {
        SequenceSpec::oscillating(
            Tail { base: vec![1.0, 0.0], direction: vec![0.0, 0.0] },
            Tail { base: vec![-1.0, 0.0], direction: vec![0.0, 0.0] },
        )
        .unwrap()
    }

    #[test]
    fn harmonic_n0_is_ten() {
        let g = DetectorGrid::new(vec![0.1], vec![1.0]).unwrap();
        let r = check_convergence(&norm(), &harmonic(), &[0.0, 0.0], &g, 1000).unwrap();
        assert_eq!(r.cells[0].n0, Some(10));
        assert_eq!(r.verdict, Verdict::Holds);
        let c = check_cauchy(&norm(), &harmonic(), &g, 1000, None).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert!(c.cells[0].n0.unwrap() <= 10);
    }

    #[test]
    fn alternating_fails() {
        let r = check_convergence(&norm(), &alternating(), &[0.0, 0.0], &DetectorGrid::default(), 100).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let c = check_cauchy(&norm(), &alternating(), &DetectorGrid::default(), 100, None).unwrap();
        assert_eq!(c.verdict, Verdict::Fails);
    }

    #[test]
    fn constant_is_immediate() {
        let s = SequenceSpec::constant(vec![3.0, 4.0]).unwrap();
        let r = check_convergence(&norm(), &s, &[3.0, 4.0], &DetectorGrid::default(), 50).unwrap();
        assert!(r.cells.iter().all(|c| c.n0 == Some(1)));
        let c = check_cauchy(&norm(), &s, &DetectorGrid::default(), 50, None).unwrap();
        assert!(c.cells.iter().all(|c| c.n0 == Some(1)));
    }

    #[test]
    fn bounded_certificates() {
        let s = BoundSearch { t: vec![9.0, 10.0], r: vec![0.1] };
        let b = check_bounded(&norm(), &harmonic(), 1000, &s).unwrap();
        let c = b.certificate.unwrap();
        assert_eq!((c.t, c.r), (10.0, 0.1));
        let arith = SequenceSpec::arithmetic(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap();
        let s = BoundSearch { t: log_grid(1e-3, 1e3, 13), r: vec![0.1, 0.3, 0.5] };
        assert!(check_bounded(&norm(), &arith, 10_000, &s).unwrap().certificate.is_none());
    }

    #[test]
    fn extraction_of_oscillation() {
        let s = SequenceSpec::oscillating(
            Tail { base: vec![1.0, 0.0], direction: vec![0.0, 1.0] },
            Tail { base: vec![-1.0, 0.0], direction: vec![0.0, 1.0] },
        )
        .unwrap();
        let e = extract_convergent_subsequence(&norm(), &s, 1000, &Basis::standard(2)).unwrap();
        assert!(e.indices.iter().all(|n| n % 2 == 0), "{:?}", e.indices);
        assert!((e.limit[0] - 1.0).abs() < 1e-12 && e.limit[1] < 2e-3, "{:?}", e.limit);
        let arith = SequenceSpec::arithmetic(vec![0.0, 0.0], vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            extract_convergent_subsequence(&norm(), &arith, 1000, &Basis::standard(2)),
            Err(Error::Unbounded { coordinate: 0, .. })
        ));
    }

    #[test]
    fn reconstruction_in_rotated_basis() {
        let b = Basis::new(vec![vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        let s = SequenceSpec::geometric(vec![0.0, 0.0], vec![1.0, 1.0], 0.5).unwrap();
        let r = coordinate_limit_reconstruction(&norm(), &s, &b, 200).unwrap();
        assert!(vector::euclidean(&r.limit) < 1e-12);
        assert!(matches!(
            coordinate_limit_reconstruction(&norm(), &alternating(), &Basis::standard(2), 100),
            Err(Error::Reconstruction { coordinate: 0, .. })
        ));
    }
}
