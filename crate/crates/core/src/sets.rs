//! Point sets at desk scale: finite lists, balls in a crisp norm and
//! invertible affine images of those. Closure points and compactness are
//! decided through the sequence detectors.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{solve, Basis};
use crate::map::{mat_vec, MapSpec};
use crate::norm::GifPsiNorm;
use crate::sequence::{
    check_bounded, check_convergence, extract_convergent_subsequence, BoundSearch, BoundedReport,
    ConvergenceReport, DetectorGrid, Extraction, SequenceSpec,
};
use crate::vector::{self, check_dim, CrispNorm};

/// Relative slack for ball membership.
pub const BALL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SetSpec {
    Finite {
        points: Vec<Vec<f64>>,
    },
    /// {y : ‖y − c‖ ≤ ρ}, or < ρ when `open`.
    Ball {
        center: Vec<f64>,
        radius: f64,
        open: bool,
        norm: CrispNorm,
    },
    /// {A z + b : z ∈ source} for invertible square A.
    LinearImage {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
        source: Box<SetSpec>,
    },
}

impl SetSpec {
    pub fn finite(points: Vec<Vec<f64>>) -> Result<Self> {
        let d = points
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::Domain("a finite set needs at least one point".into()))?;
        if d == 0 {
            return Err(Error::Domain("points must have dimension >= 1".into()));
        }
        for p in &points {
            check_dim(d, p)?;
        }
        Ok(SetSpec::Finite { points })
    }

    pub fn ball(center: Vec<f64>, radius: f64, open: bool, norm: CrispNorm) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::Domain("ball center must have dimension >= 1".into()));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain(format!("radius = {radius} must be finite and > 0")));
        }
        norm.validate()?;
        Ok(SetSpec::Ball {
            center,
            radius,
            open,
            norm,
        })
    }

    pub fn closed_ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        SetSpec::ball(center, radius, false, CrispNorm::EUCLIDEAN)
    }

    pub fn open_ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        SetSpec::ball(center, radius, true, CrispNorm::EUCLIDEAN)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SetSpec::Finite { .. } => "finite set",
            SetSpec::Ball { .. } => "ball",
            SetSpec::LinearImage { .. } => "affine image",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            SetSpec::Finite { points } => points[0].len(),
            SetSpec::Ball { center, .. } => center.len(),
            SetSpec::LinearImage { offset, .. } => offset.len(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dimension() {
            return false;
        }
        match self {
            SetSpec::Finite { points } => points.iter().any(|p| p.as_slice() == x),
            SetSpec::Ball {
                center,
                radius,
                open,
                norm,
            } => {
                let d = norm.eval(&vector::sub(x, center));
                if *open {
                    d < radius * (1.0 - BALL_SLACK)
                } else {
                    d <= radius * (1.0 + BALL_SLACK)
                }
            }
            SetSpec::LinearImage { .. } => self.preimage(x).is_ok_and(|(z, src)| src.contains(&z)),
        }
    }

    /// Closed and bounded as a set spec: finite lists and closed balls are,
    /// open balls are not, and invertible affine images inherit both.
    pub fn is_closed(&self) -> bool {
        match self {
            SetSpec::Finite { .. } => true,
            SetSpec::Ball { open, .. } => !open,
            SetSpec::LinearImage { source, .. } => source.is_closed(),
        }
    }

    fn preimage(&self, x: &[f64]) -> Result<(Vec<f64>, &SetSpec)> {
        match self {
            SetSpec::LinearImage {
                matrix,
                offset,
                source,
            } => Ok((solve(matrix, &vector::sub(x, offset))?, source)),
            _ => Err(Error::Unsupported("preimage of a base set".into())),
        }
    }

    fn forward(&self, z: &[f64]) -> Vec<f64> {
        match self {
            SetSpec::LinearImage { matrix, offset, .. } => vector::add(&mat_vec(matrix, z), offset),
            _ => z.to_vec(),
        }
    }

    fn affine_map(&self) -> Result<MapSpec> {
        match self {
            SetSpec::LinearImage { matrix, offset, .. } => MapSpec::affine(matrix.clone(), offset.clone()),
            _ => Ok(MapSpec::identity(self.dimension())),
        }
    }

    /// A sequence inside the set converging to x when x is a closure point,
    /// or to the nearest set point otherwise.
    pub fn approach_sequence(&self, x: &[f64]) -> Result<SequenceSpec> {
        check_dim(self.dimension(), x)?;
        match self {
            SetSpec::Finite { points } => {
                let nearest = points
                    .iter()
                    .min_by(|a, b| {
                        vector::euclidean(&vector::sub(a, x)).total_cmp(&vector::euclidean(&vector::sub(b, x)))
                    })
                    .expect("nonempty");
                SequenceSpec::constant(nearest.clone())
            }
            SetSpec::Ball {
                center,
                radius,
                norm,
                ..
            } => {
                let target = clip(center, *radius, *norm, x);
                // target + (c − target)/n: the segment from c, ending at target.
                SequenceSpec::affine_decay(target.clone(), vector::sub(center, &target))
            }
            SetSpec::LinearImage { .. } => {
                let (z, source) = self.preimage(x)?;
                SequenceSpec::image(source.approach_sequence(&z)?, self.affine_map()?)
            }
        }
    }

    /// The point of the set's boundary nearest to `x` (for finite lists the
    /// nearest listed point).
    pub fn boundary_point(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dimension(), x)?;
        match self {
            SetSpec::Finite { .. } => self.approach_sequence(x)?.term(1),
            SetSpec::Ball {
                center,
                radius,
                norm,
                ..
            } => {
                let v = vector::sub(x, center);
                let d = norm.eval(&v);
                if d == 0.0 {
                    let mut e = vector::basis_vector(x.len(), 0);
                    e = vector::scale(*radius / norm.eval(&e), &e);
                    return Ok(vector::add(center, &e));
                }
                Ok(vector::add(center, &vector::scale(radius / d, &v)))
            }
            SetSpec::LinearImage { .. } => {
                let (z, source) = self.preimage(x)?;
                Ok(self.forward(&source.boundary_point(&z)?))
            }
        }
    }

    /// A few points of the set spanning its extent.
    pub fn sample_points(&self) -> Vec<Vec<f64>> {
        match self {
            SetSpec::Finite { points } => points.clone(),
            SetSpec::Ball {
                center,
                radius,
                norm,
                open,
            } => {
                let shrink = if *open { 1.0 - 1e-9 } else { 1.0 };
                let mut out = vec![center.clone()];
                for i in 0..center.len() {
                    let e = vector::basis_vector(center.len(), i);
                    let step = vector::scale(shrink * radius / norm.eval(&e), &e);
                    out.push(vector::add(center, &step));
                    out.push(vector::sub(center, &step));
                }
                out
            }
            SetSpec::LinearImage { source, .. } => {
                source.sample_points().iter().map(|z| self.forward(z)).collect()
            }
        }
    }
}

fn clip(center: &[f64], radius: f64, norm: CrispNorm, x: &[f64]) -> Vec<f64> {
    let v = vector::sub(x, center);
    let d = norm.eval(&v);
    if d <= radius {
        x.to_vec()
    } else {
        vector::add(center, &vector::scale(radius / d, &v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedPointReport {
    pub point: Vec<f64>,
    pub in_set: bool,
    pub closure_point: bool,
    /// Crisp distance from the point to the approach sequence's limit.
    pub distance: f64,
    pub convergence: ConvergenceReport,
}

/// Builds an in-set sequence aimed at x and decides, with the convergence
/// detector, whether x is a closure point of the set.
pub fn check_closed_point(
    norm: &GifPsiNorm,
    set: &SetSpec,
    x: &[f64],
    grid: &DetectorGrid,
    horizon: usize,
) -> Result<ClosedPointReport> {
    check_dim(norm.dimension(), x)?;
    let seq = set.approach_sequence(x)?;
    let aim = aim_point(set, x)?;
    let convergence = check_convergence(norm, &seq, x, grid, horizon)?;
    Ok(ClosedPointReport {
        point: x.to_vec(),
        in_set: set.contains(x),
        closure_point: convergence.holds(),
        distance: norm.crisp(&vector::sub(&aim, x)),
        convergence,
    })
}

fn aim_point(set: &SetSpec, x: &[f64]) -> Result<Vec<f64>> {
    match set {
        SetSpec::Finite { .. } => set.approach_sequence(x)?.term(1),
        SetSpec::Ball {
            center,
            radius,
            norm,
            ..
        } => Ok(clip(center, *radius, *norm, x)),
        SetSpec::LinearImage { .. } => {
            let (z, source) = set.preimage(x)?;
            Ok(set.forward(&aim_point(source, &z)?))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeOutcome {
    pub probe: usize,
    pub extraction: Extraction,
    /// The limit membership was decided on: the extracted estimate, or the
    /// nearest boundary point when the subsequence is still approaching it.
    pub limit: Vec<f64>,
    pub snapped_to_boundary: bool,
    pub limit_in_set: bool,
    pub closure: ClosedPointReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactReport {
    pub probes: Vec<ProbeOutcome>,
    /// Every probe produced an in-set limit.
    pub compatible: bool,
    pub closed: bool,
    pub bounded: BoundedReport,
    /// The set is closed and bounded yet some probe limit left it.
    pub violation: bool,
}

/// Runs subsequence extraction on each probe and decides whether the limit
/// lies in the set. A probe term outside the set is an error.
pub fn check_compact(
    norm: &GifPsiNorm,
    set: &SetSpec,
    probes: &[SequenceSpec],
    horizon: usize,
) -> Result<CompactReport> {
    check_dim(norm.dimension(), &vector::zeros(set.dimension()))?;
    let grid = DetectorGrid::default();
    let basis = Basis::standard(set.dimension());
    let mut outcomes = Vec::with_capacity(probes.len());
    for (i, probe) in probes.iter().enumerate() {
        check_dim(set.dimension(), &vector::zeros(probe.dimension()))?;
        let mut term = vector::zeros(probe.dimension());
        probe.check_horizon(horizon)?;
        for n in 1..=horizon {
            probe.eval_into(n, &mut term);
            if !set.contains(&term) {
                return Err(Error::Probe { probe: i, index: n });
            }
        }
        let extraction = extract_convergent_subsequence(norm, probe, horizon, &basis)?;
        let (limit, snapped) = decide_limit(norm, set, probe, &extraction, &grid)?;
        let closure = check_closed_point(norm, set, &limit, &grid, horizon)?;
        outcomes.push(ProbeOutcome {
            probe: i,
            limit_in_set: set.contains(&limit),
            extraction,
            limit,
            snapped_to_boundary: snapped,
            closure,
        });
    }
    let samples = SequenceSpec::explicit(set.sample_points())?;
    let bounded = check_bounded(
        norm,
        &samples,
        samples.len().unwrap_or(1),
        &BoundSearch::default(),
    )?;
    let compatible = outcomes.iter().all(|o| o.limit_in_set);
    let closed = set.is_closed();
    let violation = closed && bounded.certificate.is_some() && !compatible;
    Ok(CompactReport {
        probes: outcomes,
        compatible,
        closed,
        bounded,
        violation,
    })
}

/// A subsequence whose crisp distance to the nearest boundary point P keeps
/// strictly decreasing over its final tenth, and which the detector accepts
/// against P, is taken to converge to P. Otherwise the estimate stands.
fn decide_limit(
    norm: &GifPsiNorm,
    set: &SetSpec,
    probe: &SequenceSpec,
    ex: &Extraction,
    grid: &DetectorGrid,
) -> Result<(Vec<f64>, bool)> {
    let p = set.boundary_point(&ex.limit)?;
    if p == ex.limit {
        return Ok((p, false));
    }
    let idx = &ex.indices;
    let tail = &idx[idx.len() - (idx.len() / 10).max(2)..];
    let dist = |n: usize| -> Result<f64> { Ok(norm.crisp(&vector::sub(&probe.term(n)?, &p))) };
    let mut prev = dist(tail[0])?;
    for &n in &tail[1..] {
        let d = dist(n)?;
        if !(d < prev) {
            return Ok((ex.limit.clone(), false));
        }
        prev = d;
    }
    let sub = SequenceSpec::subsequence(probe.clone(), idx.clone())?;
    if check_convergence(norm, &sub, &p, grid, idx.len())?.holds() {
        Ok((p, true))
    } else {
        Ok((ex.limit.clone(), false))
    }
}
