//! Fuzzy connectives: t-norms (∗), t-conorms (⋄), operations ∘ on ℝ⁺ and
//! ψ-functions, each with a sampled axiom checker.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{check_open_unit, check_unit, Error, Result};
use crate::report::{AxiomReport, Relation, Tally, Witness};
use crate::sampler::{log_uniform, uniform, SamplerConfig};

type BinaryFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type UnaryFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A user-supplied binary operation. Equality is by identity of the closure.
#[derive(Clone)]
pub struct CustomBinary {
    name: String,
    f: Arc<BinaryFn>,
}

impl CustomBinary {
    pub fn new(name: impl Into<String>, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        CustomBinary {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for CustomBinary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomBinary").field("name", &self.name).finish_non_exhaustive()
    }
}

impl PartialEq for CustomBinary {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.f, &other.f)
    }
}

impl Serialize for CustomBinary {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CustomBinary", 1)?;
        st.serialize_field("name", &self.name)?;
        st.end()
    }
}

/// A user-supplied scalar function.
#[derive(Clone)]
pub struct CustomUnary {
    name: String,
    f: Arc<UnaryFn>,
}

impl CustomUnary {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        CustomUnary {
            name: name.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for CustomUnary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomUnary").field("name", &self.name).finish_non_exhaustive()
    }
}

impl PartialEq for CustomUnary {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.f, &other.f)
    }
}

impl Serialize for CustomUnary {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CustomUnary", 1)?;
        st.serialize_field("name", &self.name)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
    Custom(CustomBinary),
}

impl TNorm {
    pub fn custom(name: &str, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        TNorm::Custom(CustomBinary::new(name, f))
    }

    /// a ∗ b for a, b ∈ [0, 1].
    pub fn apply(&self, a: f64, b: f64) -> Result<f64> {
        check_unit("a", a)?;
        check_unit("b", b)?;
        Ok(self.eval(a, b))
    }

    /// Unchecked evaluation.
    #[inline]
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
            TNorm::Custom(c) => (c.f)(a, b),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Custom(c) => &c.name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TConorm {
    Maximum,
    ProbabilisticSum,
    BoundedSum,
    Custom(CustomBinary),
}

impl TConorm {
    pub fn custom(name: &str, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        TConorm::Custom(CustomBinary::new(name, f))
    }

    /// a ⋄ b for a, b ∈ [0, 1].
    pub fn apply(&self, a: f64, b: f64) -> Result<f64> {
        check_unit("a", a)?;
        check_unit("b", b)?;
        Ok(self.eval(a, b))
    }

    #[inline]
    pub fn eval(&self, a: f64, b: f64) -> f64 {
        match self {
            TConorm::Maximum => a.max(b),
            TConorm::ProbabilisticSum => a + b - a * b,
            TConorm::BoundedSum => (a + b).min(1.0),
            TConorm::Custom(c) => (c.f)(a, b),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            TConorm::Maximum => "maximum",
            TConorm::ProbabilisticSum => "probabilistic-sum",
            TConorm::BoundedSum => "bounded-sum",
            TConorm::Custom(c) => &c.name,
        }
    }
}

/// A two-place operation ∘ on [0, ∞) combining the time parameters of the
/// triangle axioms.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CircleOp {
    Add,
    Max,
    /// (sⁿ + tⁿ)^(1/n).
    PowerMean { n: u32 },
    Custom(CustomBinary),
}

impl CircleOp {
    pub fn custom(name: &str, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        CircleOp::Custom(CustomBinary::new(name, f))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CircleOp::PowerMean { n: 0 } => {
                Err(Error::Domain("power-mean exponent n must be a positive integer".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn apply(&self, s: f64, t: f64) -> Result<f64> {
        self.validate()?;
        for (name, v) in [("s", s), ("t", t)] {
            if !(v >= 0.0) {
                return Err(Error::Domain(format!("{name} = {v} must be >= 0")));
            }
        }
        Ok(self.eval(s, t))
    }

    #[inline]
    pub fn eval(&self, s: f64, t: f64) -> f64 {
        match self {
            CircleOp::Add => s + t,
            CircleOp::Max => s.max(t),
            CircleOp::PowerMean { n: 1 } => s + t,
            CircleOp::PowerMean { n } => {
                let n = *n as f64;
                let m = s.max(t);
                if m == 0.0 || m.is_infinite() {
                    return m;
                }
                // Factor out the larger argument so sⁿ cannot overflow.
                let (a, b) = (s / m, t / m);
                m * libm::pow(libm::pow(a, n) + libm::pow(b, n), 1.0 / n)
            }
            CircleOp::Custom(c) => (c.f)(s, t),
        }
    }
}

/// An even, normalized, strictly increasing scaling function ψ: ℝ → ℝ.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PsiFunction {
    Abs,
    /// |α|ᵖ, p > 0.
    AbsPower { p: f64 },
    /// 2α²ⁿ / (|α| + 1).
    RationalExample { n: u32 },
    Custom(CustomUnary),
}

impl PsiFunction {
    pub fn custom(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        PsiFunction::Custom(CustomUnary::new(name, f))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PsiFunction::AbsPower { p } if !(p > 0.0) || !p.is_finite() => {
                Err(Error::Domain(format!("abs-power exponent p = {p} must be > 0")))
            }
            PsiFunction::RationalExample { n: 0 } => {
                Err(Error::Domain("rational-example n must be a positive integer".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn apply(&self, alpha: f64) -> Result<f64> {
        self.validate()?;
        if alpha.is_nan() {
            return Err(Error::Domain("ψ argument is NaN".into()));
        }
        Ok(self.eval(alpha))
    }

    #[inline]
    pub fn eval(&self, alpha: f64) -> f64 {
        let a = libm::fabs(alpha);
        match self {
            PsiFunction::Abs => a,
            PsiFunction::AbsPower { p } => libm::pow(a, *p),
            PsiFunction::RationalExample { n } => {
                2.0 * libm::pow(a, 2.0 * *n as f64) / (a + 1.0)
            }
            PsiFunction::Custom(c) => (c.f)(alpha),
        }
    }
}

/// The algebraic environment (∗, ⋄, ∘, ψ) of a norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyConnectives {
    pub tnorm: TNorm,
    pub tconorm: TConorm,
    pub circle: CircleOp,
    pub psi: PsiFunction,
}

impl FuzzyConnectives {
    /// min / max / addition / absolute value.
    pub fn standard() -> Self {
        FuzzyConnectives {
            tnorm: TNorm::Minimum,
            tconorm: TConorm::Maximum,
            circle: CircleOp::Add,
            psi: PsiFunction::Abs,
        }
    }

    pub fn with_circle(mut self, circle: CircleOp) -> Self {
        self.circle = circle;
        self
    }

    pub fn validate_parameters(&self) -> Result<()> {
        self.circle.validate()?;
        self.psi.validate()
    }

    /// Runs every member's axiom checker.
    pub fn check(&self, sampler: &SamplerConfig) -> Result<Vec<AxiomReport>> {
        Ok(alloc::vec![
            self.tnorm.check_axioms(sampler)?,
            self.tconorm.check_axioms(sampler)?,
            self.circle.check_axioms(sampler)?,
            self.psi.check_axioms(sampler)?,
        ])
    }

    /// Returns the bundle only if all four members pass their checkers.
    pub fn validated(self, sampler: &SamplerConfig) -> Result<Self> {
        for report in self.check(sampler)? {
            if let Some(e) = report.failures().next() {
                return Err(Error::Domain(format!(
                    "{} fails its {} axiom",
                    report.subject, e.axiom
                )));
            }
        }
        Ok(self)
    }
}

/// Sampled checking of the defining axioms of a connective.
pub trait CheckAxioms {
    fn check_axioms(&self, sampler: &SamplerConfig) -> Result<AxiomReport>;
}

pub fn check_connective_axioms<C: CheckAxioms + ?Sized>(
    c: &C,
    sampler: &SamplerConfig,
) -> Result<AxiomReport> {
    c.check_axioms(sampler)
}

const UNIT_GRID: [f64; 3] = [0.0, 0.5, 1.0];

/// Arguments for sample `i`: the first nine samples sweep {0, ½, 1}² so that
/// boundary behaviour is always exercised.
fn unit_args<R: Rng>(i: usize, rng: &mut R) -> [f64; 4] {
    let mut v = [0.0; 4];
    for x in v.iter_mut() {
        *x = rng.random::<f64>();
    }
    if i < 9 {
        v[0] = UNIT_GRID[i / 3];
        v[1] = UNIT_GRID[i % 3];
    }
    v
}

fn check_unit_op(
    subject: String,
    identity: f64,
    f: impl Fn(f64, f64) -> f64,
    sampler: &SamplerConfig,
) -> Result<AxiomReport> {
    sampler.validate()?;
    let tol = sampler.tolerance;
    let mut id = Tally::new("identity", tol);
    let mut comm = Tally::new("commutativity", tol);
    let mut assoc = Tally::new("associativity", tol);
    let mut mono = Tally::new("monotonicity", tol);
    let mut range = Tally::new("range", tol);
    for i in 0..sampler.samples {
        let mut rng = sampler.rng(i);
        let [a, b, c, d] = unit_args(i, &mut rng);
        id.observe(i, f(a, identity), Relation::Equal, a, || {
            Witness::scalars(&[a, identity])
        });
        comm.observe(i, f(a, b), Relation::Equal, f(b, a), || Witness::scalars(&[a, b]));
        assoc.observe(i, f(a, f(b, c)), Relation::Equal, f(f(a, b), c), || {
            Witness::scalars(&[a, b, c])
        });
        let (lo1, hi1) = (a.min(c), a.max(c));
        let (lo2, hi2) = (b.min(d), b.max(d));
        mono.observe(i, f(lo1, lo2), Relation::AtMost, f(hi1, hi2), || {
            Witness::scalars(&[lo1, lo2, hi1, hi2])
        });
        let v = f(a, b);
        range.observe(i, v, Relation::AtLeast, 0.0, || Witness::scalars(&[a, b]));
        range.observe(i, v, Relation::AtMost, 1.0, || Witness::scalars(&[a, b]));
    }
    let mut report = AxiomReport::new(subject);
    report.entries = alloc::vec![id.finish(), comm.finish(), assoc.finish(), mono.finish(), range.finish()];
    Ok(report)
}

impl CheckAxioms for TNorm {
    fn check_axioms(&self, sampler: &SamplerConfig) -> Result<AxiomReport> {
        check_unit_op(format!("t-norm {}", self.name()), 1.0, |a, b| self.eval(a, b), sampler)
    }
}

impl CheckAxioms for TConorm {
    fn check_axioms(&self, sampler: &SamplerConfig) -> Result<AxiomReport> {
        check_unit_op(format!("t-conorm {}", self.name()), 0.0, |a, b| self.eval(a, b), sampler)
    }
}

/// Upper end of the sampling range for ∘.
const CIRCLE_RANGE: f64 = 10.0;

impl CheckAxioms for CircleOp {
    fn check_axioms(&self, sampler: &SamplerConfig) -> Result<AxiomReport> {
        sampler.validate()?;
        self.validate()?;
        let tol = sampler.tolerance;
        let f = |a, b| self.eval(a, b);
        let mut id = Tally::new("identity", tol);
        let mut comm = Tally::new("commutativity", tol);
        let mut assoc = Tally::new("associativity", tol);
        let mut mono = Tally::new("monotonicity", tol);
        let mut range = Tally::new("range", tol);
        let grid = [0.0, 1.0, CIRCLE_RANGE];
        for i in 0..sampler.samples {
            let mut rng = sampler.rng(i);
            let mut v = [0.0; 4];
            for x in v.iter_mut() {
                *x = uniform(&mut rng, 0.0, CIRCLE_RANGE);
            }
            if i < 9 {
                v[0] = grid[i / 3];
                v[1] = grid[i % 3];
            }
            let [a, b, c, d] = v;
            id.observe(i, f(a, 0.0), Relation::Equal, a, || Witness::scalars(&[a, 0.0]));
            comm.observe(i, f(a, b), Relation::Equal, f(b, a), || Witness::scalars(&[a, b]));
            assoc.observe(i, f(a, f(b, c)), Relation::Equal, f(f(a, b), c), || {
                Witness::scalars(&[a, b, c])
            });
            let (lo1, hi1) = (a.min(c), a.max(c));
            let (lo2, hi2) = (b.min(d), b.max(d));
            mono.observe(i, f(lo1, lo2), Relation::AtMost, f(hi1, hi2), || {
                Witness::scalars(&[lo1, lo2, hi1, hi2])
            });
            range.observe(i, f(a, b), Relation::AtLeast, 0.0, || Witness::scalars(&[a, b]));
        }
        let name = match self {
            CircleOp::Add => String::from("add"),
            CircleOp::Max => String::from("max"),
            CircleOp::PowerMean { n } => format!("power-mean({n})"),
            CircleOp::Custom(c) => c.name.clone(),
        };
        let mut report = AxiomReport::new(format!("circle operation {name}"));
        report.entries = alloc::vec![id.finish(), comm.finish(), assoc.finish(), mono.finish(), range.finish()];
        Ok(report)
    }
}

/// Spacing and extent of the ascending grid used for strict monotonicity.
pub const PSI_GRID_STEP: f64 = 1e-3;
pub const PSI_GRID_POINTS: usize = 100_000;
/// Limit probes: ψ(SMALL) ≤ SMALL_BOUND and ψ(LARGE) ≥ LARGE_BOUND.
pub const PSI_PROBE_SMALL: f64 = 1e-100;
pub const PSI_PROBE_LARGE: f64 = 1e100;
pub const PSI_SMALL_BOUND: f64 = 1e-2;
pub const PSI_LARGE_BOUND: f64 = 1e2;

impl CheckAxioms for PsiFunction {
    fn check_axioms(&self, sampler: &SamplerConfig) -> Result<AxiomReport> {
        sampler.validate()?;
        self.validate()?;
        let tol = sampler.tolerance;
        let psi = |a| self.eval(a);
        let mut even = Tally::new("evenness", tol);
        for i in 0..sampler.samples {
            let mut rng = sampler.rng(i);
            let t = log_uniform(&mut rng, 1e-3, 1e3);
            even.observe(i, psi(-t), Relation::Equal, psi(t), || Witness::scalars(&[t]));
        }
        let mut norm = Tally::new("normalization", tol);
        norm.observe(0, psi(1.0), Relation::Equal, 1.0, || Witness::scalars(&[1.0]));

        let mut mono = Tally::new("strict-monotonicity", 0.0).with_note(format!(
            "strict increase between neighbours of the grid j·{PSI_GRID_STEP:e}, j = 1..{PSI_GRID_POINTS}"
        ));
        let mut prev = psi(PSI_GRID_STEP);
        for j in 2..=PSI_GRID_POINTS {
            let (lo, hi) = ((j - 1) as f64 * PSI_GRID_STEP, j as f64 * PSI_GRID_STEP);
            let cur = psi(hi);
            mono.observe(j - 2, prev, Relation::Below, cur, || Witness::scalars(&[lo, hi]));
            prev = cur;
        }

        let mut lim = Tally::new("limits", 0.0).with_note(format!(
            "surrogate: ψ({PSI_PROBE_SMALL:e}) <= {PSI_SMALL_BOUND:e} and ψ({PSI_PROBE_LARGE:e}) >= {PSI_LARGE_BOUND:e}"
        ));
        lim.observe(0, psi(PSI_PROBE_SMALL), Relation::AtMost, PSI_SMALL_BOUND, || {
            Witness::scalars(&[PSI_PROBE_SMALL])
        });
        lim.observe(1, psi(PSI_PROBE_LARGE), Relation::AtLeast, PSI_LARGE_BOUND, || {
            Witness::scalars(&[PSI_PROBE_LARGE])
        });

        let name = match self {
            PsiFunction::Abs => String::from("abs"),
            PsiFunction::AbsPower { p } => format!("abs-power({p})"),
            PsiFunction::RationalExample { n } => format!("rational-example({n})"),
            PsiFunction::Custom(c) => c.name.clone(),
        };
        let mut report = AxiomReport::new(format!("psi {name}"));
        report.entries = alloc::vec![even.finish(), norm.finish(), mono.finish(), lim.finish()];
        Ok(report)
    }
}

/// Number of points (i + 1)/(GRID + 1) scanned by the companion solvers.
pub const COMPANION_GRID: usize = 1024;
const REFINE_STEPS: usize = 64;

fn grid_point(i: usize) -> f64 {
    (i + 1) as f64 / (COMPANION_GRID + 1) as f64
}

/// Smallest grid point satisfying an up-closed predicate; if none does, the
/// gap (last grid point, 1) is refined by bisection.
fn scan_up(pred: impl Fn(f64) -> bool, what: &str) -> Result<f64> {
    if let Some(i) = (0..COMPANION_GRID).find(|&i| pred(grid_point(i))) {
        return Ok(grid_point(i));
    }
    let (mut lo, mut hi) = (grid_point(COMPANION_GRID - 1), 1.0);
    if pred(hi) {
        for _ in 0..REFINE_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if pred(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if hi < 1.0 {
            return Ok(hi);
        }
    }
    Err(Error::SearchExhausted(format!("no {what} in (0, 1) at grid resolution")))
}

/// Largest grid point before the first failure of a down-closed predicate;
/// if the first grid point fails, the gap (0, first grid point) is refined.
fn scan_down(pred: impl Fn(f64) -> bool, what: &str) -> Result<f64> {
    match (0..COMPANION_GRID).find(|&i| !pred(grid_point(i))) {
        None => return Ok(grid_point(COMPANION_GRID - 1)),
        Some(i) if i > 0 => return Ok(grid_point(i - 1)),
        Some(_) => {}
    }
    let (mut lo, mut hi) = (0.0, grid_point(0));
    if pred(lo) {
        for _ in 0..REFINE_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if pred(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if lo > 0.0 {
            return Ok(lo);
        }
    }
    Err(Error::SearchExhausted(format!("no {what} in (0, 1) at grid resolution")))
}

fn check_ordered_pair(r1: f64, r2: f64) -> Result<()> {
    check_open_unit("r1", r1)?;
    check_open_unit("r2", r2)?;
    if r2 < r1 {
        Ok(())
    } else {
        Err(Error::Domain(format!("need r2 < r1, got r1 = {r1}, r2 = {r2}")))
    }
}

fn verified(value: f64, ok: bool, what: &str) -> Result<f64> {
    if ok && value > 0.0 && value < 1.0 {
        Ok(value)
    } else {
        Err(Error::SearchExhausted(format!("{what} = {value} failed re-verification")))
    }
}

/// r₃ ∈ (0, 1) with r₁ ∗ r₃ > r₂.
pub fn find_companion_r3(r1: f64, r2: f64, t: &TNorm) -> Result<f64> {
    check_ordered_pair(r1, r2)?;
    let r3 = scan_up(|r| t.eval(r1, r) > r2, "r3")?;
    verified(r3, t.apply(r1, r3)? > r2, "r3")
}

/// r₄ ∈ (0, 1) with r₄ ⋄ r₂ < r₁.
pub fn find_companion_r4(r1: f64, r2: f64, s: &TConorm) -> Result<f64> {
    check_ordered_pair(r1, r2)?;
    let r4 = scan_down(|r| s.eval(r, r2) < r1, "r4")?;
    verified(r4, s.apply(r4, r2)? < r1, "r4")
}

/// (r₆, r₇) ∈ (0, 1)² with r₆ ∗ r₆ ≥ r₅ and r₇ ⋄ r₇ ≤ r₅.
pub fn find_idempotent_pair(r5: f64, t: &TNorm, s: &TConorm) -> Result<(f64, f64)> {
    check_open_unit("r5", r5)?;
    let r6 = scan_up(|r| t.eval(r, r) >= r5, "r6")?;
    let r6 = verified(r6, t.apply(r6, r6)? >= r5, "r6")?;
    let r7 = scan_down(|r| s.eval(r, r) <= r5, "r7")?;
    let r7 = verified(r7, s.apply(r7, r7)? <= r5, "r7")?;
    Ok((r6, r7))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn small() -> SamplerConfig {
        SamplerConfig::default().with_samples(1000)
    }

    #[test]
    fn builtin_formulas() {
        assert_eq!(TNorm::Minimum.apply(0.3, 0.7).unwrap(), 0.3);
        assert_eq!(TNorm::Product.apply(0.4, 1.0).unwrap(), 0.4);
        assert_eq!(TNorm::Product.apply(0.5, 0.5).unwrap(), 0.25);
        assert_eq!(TConorm::Maximum.apply(0.3, 0.7).unwrap(), 0.7);
        assert_eq!(TConorm::ProbabilisticSum.apply(0.4, 0.0).unwrap(), 0.4);
        assert_eq!(TConorm::ProbabilisticSum.apply(0.5, 0.5).unwrap(), 0.75);
        assert_eq!(CircleOp::Add.apply(3.0, 4.0).unwrap(), 7.0);
        assert_eq!(CircleOp::PowerMean { n: 2 }.apply(3.0, 4.0).unwrap(), 5.0);
        assert_eq!(CircleOp::Max.apply(2.5, 0.0).unwrap(), 2.5);
        assert_eq!(PsiFunction::RationalExample { n: 1 }.apply(1.0).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(TNorm::Minimum.apply(1.2, 0.5), Err(Error::Domain(_))));
        assert!(matches!(TConorm::Maximum.apply(0.5, -0.1), Err(Error::Domain(_))));
        assert!(matches!(CircleOp::Add.apply(-1.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(CircleOp::PowerMean { n: 0 }.apply(1.0, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn builtins_pass_their_axioms() {
        let s = small();
        for t in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz] {
            assert!(t.check_axioms(&s).unwrap().all_passed(), "{t:?}");
        }
        for c in [TConorm::Maximum, TConorm::ProbabilisticSum, TConorm::BoundedSum] {
            assert!(c.check_axioms(&s).unwrap().all_passed(), "{c:?}");
        }
        for c in [CircleOp::Add, CircleOp::Max, CircleOp::PowerMean { n: 3 }] {
            assert!(c.check_axioms(&s).unwrap().all_passed(), "{c:?}");
        }
        for p in [
            PsiFunction::Abs,
            PsiFunction::AbsPower { p: 2.5 },
            PsiFunction::RationalExample { n: 1 },
        ] {
            assert!(p.check_axioms(&s).unwrap().all_passed(), "{p:?}");
        }
    }

    #[test]
    fn projection_is_not_commutative() {
        let proj = TNorm::custom("projection", |a, _| a);
        let r = check_connective_axioms(&proj, &small()).unwrap();
        let e = r.entry("commutativity").unwrap();
        assert_eq!(e.status, Status::Fail);
        let w = e.witness.as_ref().unwrap().scalars.clone().unwrap();
        assert_ne!(w[0], w[1]);
        assert_ne!(proj.eval(w[0], w[1]), proj.eval(w[1], w[0]));
        assert_eq!(r.entry("identity").unwrap().status, Status::Pass);
    }

    #[test]
    fn companions() {
        let r3 = find_companion_r3(0.8, 0.5, &TNorm::Minimum).unwrap();
        assert!(r3.min(0.8) > 0.5);
        let r3 = find_companion_r3(0.6, 0.59, &TNorm::Minimum).unwrap();
        assert!(r3 > 0.59 && r3 < 1.0);
        let r3 = find_companion_r3(0.9999, 0.9998, &TNorm::Product).unwrap();
        assert!(0.9999 * r3 > 0.9998 && r3 < 1.0);
        let r4 = find_companion_r4(0.51, 0.5, &TConorm::Maximum).unwrap();
        assert!(r4 < 0.51);
        let r4 = find_companion_r4(0.9, 0.1, &TConorm::ProbabilisticSum).unwrap();
        assert!(r4 + 0.1 - 0.1 * r4 < 0.9);
        let (r6, r7) = find_idempotent_pair(0.5, &TNorm::Minimum, &TConorm::ProbabilisticSum).unwrap();
        assert!(r6 >= 0.5);
        assert!(2.0 * r7 - r7 * r7 <= 0.5);
        assert!((r7 - (1.0 - 0.5f64.sqrt())).abs() < 1.0 / 1025.0);
        let zero = TNorm::custom("zero", |_, _| 0.0);
        assert!(matches!(find_companion_r3(0.8, 0.5, &zero), Err(Error::SearchExhausted(_))));
        assert!(matches!(find_companion_r3(0.5, 0.8, &TNorm::Minimum), Err(Error::Domain(_))));
    }
}
