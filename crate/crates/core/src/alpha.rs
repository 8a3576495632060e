//! Crisp α-norms extracted from a fuzzy norm by monotone bisection.
//!
//! For α ∈ (0, 1) the mu-variant is ‖x‖α = inf{t > 0 : μ(x, t) ≥ α} and the
//! nu-variant is inf{t > 0 : ν(x, t) ≤ 1 − α}. Both rays are up-closed in t
//! because μ(x, ·) is nondecreasing and ν(x, ·) nonincreasing.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;
use serde::Serialize;

use crate::error::{check_open_unit, Error, Result};
use crate::linalg::{rank, RANK_TOLERANCE};
use crate::norm::GifPsiNorm;
use crate::report::{AxiomReport, Relation, Tally, Witness};
use crate::sampler::{signed_log_uniform, uniform_vector, SamplerConfig};
use crate::vector::{self, check_dim};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaVariant {
    Mu,
    Nu,
}

pub const NU_CONVENTION: &str = "nu-variant uses inf{t : nu(x,t) <= 1 - alpha}; \
the supremum form sup{t : nu(x,t) <= alpha} is unbounded for a nonincreasing nu and is not a norm";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaNormFamily {
    pub source: GifPsiNorm,
    pub variant: AlphaVariant,
    /// The search gives up once the bracket passes this value.
    pub bracket_cap: f64,
    /// Absolute bisection tolerance; the bracket is also narrowed to a
    /// relative width of [`RELATIVE_WIDTH`].
    pub tolerance: f64,
    pub max_iter: usize,
}

pub const RELATIVE_WIDTH: f64 = 1e-14;

impl AlphaNormFamily {
    pub fn new(source: GifPsiNorm, variant: AlphaVariant) -> Self {
        AlphaNormFamily {
            source,
            variant,
            bracket_cap: 1e12,
            tolerance: 1e-9,
            max_iter: 200,
        }
    }

    fn reaches(&self, x: &[f64], t: f64, alpha: f64) -> bool {
        match self.variant {
            AlphaVariant::Mu => self.source.mu(x, t) >= alpha,
            AlphaVariant::Nu => self.source.nu(x, t) <= 1.0 - alpha,
        }
    }

    /// ‖x‖α.
    pub fn eval(&self, x: &[f64], alpha: f64) -> Result<f64> {
        check_open_unit("alpha", alpha)?;
        check_dim(self.source.dimension(), x)?;
        if vector::is_zero(x) {
            return Ok(0.0);
        }
        let p = |t: f64| self.reaches(x, t, alpha);
        let (mut lo, mut hi);
        if p(1.0) {
            // Shrink toward 0 until the level is lost.
            hi = 1.0;
            lo = 0.5;
            while p(lo) {
                hi = lo;
                lo *= 0.5;
                if lo == 0.0 {
                    return Ok(hi);
                }
            }
        } else {
            lo = 1.0;
            hi = 2.0;
            while !p(hi) {
                if hi > self.bracket_cap {
                    return Err(Error::UnreachableLevel {
                        alpha,
                        cap: self.bracket_cap,
                    });
                }
                lo = hi;
                hi *= 2.0;
            }
        }
        for _ in 0..self.max_iter {
            if hi - lo <= self.tolerance.min(RELATIVE_WIDTH * hi) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if p(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// α·k‖x‖/(1 − α) for the standard construction.
    pub fn closed_form(&self, x: &[f64], alpha: f64) -> Option<f64> {
        self.source
            .k()
            .map(|k| alpha * k * self.source.crisp(x) / (1.0 - alpha))
    }
}

/// Checks nonnegativity, definiteness, ψ-homogeneity and the triangle
/// inequality of ‖·‖α on seeded samples.
pub fn check_crisp_norm_axioms(
    f: &AlphaNormFamily,
    alpha: f64,
    sampler: &SamplerConfig,
) -> Result<AxiomReport> {
    check_open_unit("alpha", alpha)?;
    sampler.validate()?;
    let d = f.source.dimension();
    let tol = sampler.tolerance;
    let psi = &f.source.connectives.psi;
    let norm = |v: &[f64]| f.eval(v, alpha).unwrap_or(f64::NAN);

    let mut nonneg = Tally::new("nonnegativity", 0.0);
    let mut definite = Tally::new("definiteness", 0.0);
    let mut homog = Tally::new("homogeneity", tol);
    let mut triangle = Tally::new("triangle", tol);
    for i in 0..sampler.samples {
        let mut rng = sampler.rng(i);
        let x = if i == 0 {
            vector::zeros(d)
        } else {
            uniform_vector(&mut rng, d, -10.0, 10.0)
        };
        let y = uniform_vector(&mut rng, d, -10.0, 10.0);
        let c = signed_log_uniform(&mut rng, 1e-3, 1e3);
        let nx = norm(&x);
        let wx = || Witness {
            x: Some(x.clone()),
            alpha: Some(alpha),
            ..Default::default()
        };
        nonneg.observe(i, nx, Relation::AtLeast, 0.0, wx);
        if vector::is_zero(&x) {
            definite.observe(i, nx, Relation::Equal, 0.0, wx);
        } else {
            definite.observe(i, nx, Relation::Above, 0.0, wx);
        }
        let ncx = norm(&vector::scale(c, &x));
        homog.observe(i, ncx, Relation::RelEqual, psi.eval(c) * nx, || Witness {
            x: Some(x.clone()),
            alpha: Some(alpha),
            scalars: Some(vec![c]),
            ..Default::default()
        });
        let nxy = norm(&vector::add(&x, &y));
        let ny = norm(&y);
        triangle.observe(i, nxy, Relation::AtMost, nx + ny, || Witness {
            x: Some(x.clone()),
            y: Some(y.clone()),
            alpha: Some(alpha),
            ..Default::default()
        });
    }
    let mut report = AxiomReport::new(format!("alpha-norm ({:?}-variant) at alpha = {alpha}", f.variant));
    report.entries = vec![nonneg.finish(), definite.finish(), homog.finish(), triangle.finish()];
    if f.variant == AlphaVariant::Nu {
        report.notes.push(NU_CONVENTION.into());
    }
    report.notes.push(
        "the triangle inequality is tested, not assumed: its standard argument needs the circle operation to be addition"
            .into(),
    );
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AscendingReport {
    /// (α, ‖x‖α) along the grid.
    pub profile: Vec<(f64, f64)>,
    /// Grid positions j where ‖x‖ at α_{j+1} is below ‖x‖ at α_j.
    pub violations: Vec<usize>,
    pub nondecreasing: bool,
}

/// Evaluates ‖x‖α along a strictly increasing grid in (0, 1).
pub fn check_ascending_family(
    f: &AlphaNormFamily,
    x: &[f64],
    alpha_grid: &[f64],
) -> Result<AscendingReport> {
    if alpha_grid.is_empty() {
        return Err(Error::Domain("alpha grid is empty".into()));
    }
    for &a in alpha_grid {
        check_open_unit("alpha", a)?;
    }
    if alpha_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("alpha grid must be strictly increasing".into()));
    }
    let profile = alpha_grid
        .iter()
        .map(|&a| f.eval(x, a).map(|v| (a, v)))
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<usize> = profile
        .windows(2)
        .enumerate()
        .filter(|(_, w)| !(w[1].1 >= w[0].1))
        .map(|(j, _)| j)
        .collect();
    Ok(AscendingReport {
        nondecreasing: violations.is_empty(),
        profile,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollinearityEstimate {
    pub alpha: f64,
    pub vectors: Vec<Vec<f64>>,
    /// min over sampled coefficients with Σ|aᵢ| = 1 of ‖Σ aᵢ xᵢ‖α.
    pub c_alpha_estimate: f64,
    pub argmin_coefficients: Vec<f64>,
    /// Always true: a sampled minimum bounds the true constant from above.
    pub upper_bound: bool,
    pub note: String,
}

pub const DESCENT_STEPS: usize = 100;

fn normalize_l1(a: &mut [f64]) -> bool {
    let s: f64 = a.iter().map(|v| libm::fabs(*v)).sum();
    if s > 0.0 && s.is_finite() {
        a.iter_mut().for_each(|v| *v /= s);
        true
    } else {
        false
    }
}

/// Estimates the constant C_α > 0 with ‖Σ aᵢ xᵢ‖α ≥ C_α Σ|aᵢ| for
/// linearly independent x₁..x_m, by simplex sampling with random signs,
/// the one-hot vertices, and coordinate descent from the best sample.
pub fn estimate_collinearity_constant(
    f: &AlphaNormFamily,
    vectors: &[Vec<f64>],
    alpha: f64,
    sampler: &SamplerConfig,
) -> Result<CollinearityEstimate> {
    check_open_unit("alpha", alpha)?;
    sampler.validate()?;
    if vectors.is_empty() {
        return Err(Error::Domain("at least one vector is required".into()));
    }
    let d = f.source.dimension();
    for v in vectors {
        check_dim(d, v)?;
    }
    let r = rank(vectors, RANK_TOLERANCE);
    if r < vectors.len() {
        return Err(Error::Rank {
            rank: r,
            expected: vectors.len(),
        });
    }
    let m = vectors.len();
    let objective = |a: &[f64]| -> Result<f64> {
        let mut v = vector::zeros(d);
        for (ai, xi) in a.iter().zip(vectors) {
            for (o, c) in v.iter_mut().zip(xi) {
                *o += ai * c;
            }
        }
        f.eval(&v, alpha)
    };

    let mut best = vec![0.0; m];
    best[0] = 1.0;
    let mut best_val = objective(&best)?;
    for j in 1..m {
        let mut a = vec![0.0; m];
        a[j] = 1.0;
        let v = objective(&a)?;
        if v < best_val {
            best_val = v;
            best = a;
        }
    }
    if m > 1 {
        for i in 0..sampler.samples {
            let mut rng = sampler.rng(i);
            let mut a: Vec<f64> = (0..m)
                .map(|_| {
                    let e = -libm::log(1.0 - rng.random::<f64>());
                    if rng.random::<bool>() {
                        e
                    } else {
                        -e
                    }
                })
                .collect();
            if !normalize_l1(&mut a) {
                continue;
            }
            let v = objective(&a)?;
            if v < best_val {
                best_val = v;
                best = a;
            }
        }
        let mut h = 0.1;
        let mut stalled = 0;
        for step in 0..DESCENT_STEPS {
            let j = step % m;
            let mut improved = false;
            for dir in [h, -h] {
                let mut a = best.clone();
                a[j] += dir;
                if !normalize_l1(&mut a) {
                    continue;
                }
                let v = objective(&a)?;
                if v < best_val {
                    best_val = v;
                    best = a;
                    improved = true;
                    break;
                }
            }
            if improved {
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= m {
                    h *= 0.5;
                    stalled = 0;
                }
            }
        }
    }
    Ok(CollinearityEstimate {
        alpha,
        vectors: vectors.to_vec(),
        c_alpha_estimate: best_val,
        argmin_coefficients: best,
        upper_bound: true,
        note: "sampled minimum; an upper bound on the true constant".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FuzzyConnectives;
    use crate::norm::VectorSpaceConfig;

    fn family(k: f64, variant: AlphaVariant) -> AlphaNormFamily {
        let n = GifPsiNorm::standard(VectorSpaceConfig::euclidean(2), k, FuzzyConnectives::standard())
            .unwrap();
        AlphaNormFamily::new(n, variant)
    }

    #[test]
    fn closed_form_values() {
        let f = family(1.0, AlphaVariant::Mu);
        assert!((f.eval(&[3.0, 4.0], 0.5).unwrap() - 5.0).abs() < 1e-12);
        assert!((f.eval(&[3.0, 4.0], 0.8).unwrap() - 20.0).abs() < 1e-11);
        assert_eq!(f.eval(&[0.0, 0.0], 0.3).unwrap(), 0.0);
        assert!(matches!(f.eval(&[1.0, 0.0], 1.0), Err(Error::Domain(_))));
        let tiny = f.eval(&[1e-9, 0.0], 0.5).unwrap();
        assert!((tiny / 1e-9 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unreachable_level() {
        let n = GifPsiNorm::custom(
            VectorSpaceConfig::euclidean(2),
            FuzzyConnectives::standard(),
            "capped",
            |_, t| 0.5 * t / (t + 1.0),
            |_, t| 1.0 - 0.5 * t / (t + 1.0),
        )
        .unwrap();
        let f = AlphaNormFamily::new(n, AlphaVariant::Mu);
        assert!(matches!(f.eval(&[1.0, 0.0], 0.6), Err(Error::UnreachableLevel { .. })));
    }

    #[test]
    fn ascending_profile() {
        for variant in [AlphaVariant::Mu, AlphaVariant::Nu] {
            let r = check_ascending_family(&family(1.0, variant), &[3.0, 4.0], &[0.1, 0.5, 0.9]).unwrap();
            assert!(r.nondecreasing);
            for ((_, v), want) in r.profile.iter().zip([5.0 / 9.0, 5.0, 45.0]) {
                assert!((v - want).abs() < 1e-9);
            }
        }
        assert!(check_ascending_family(&family(1.0, AlphaVariant::Mu), &[3.0, 4.0], &[0.5, 0.1]).is_err());
    }

    #[test]
    fn collinearity_examples() {
        let f = family(1.0, AlphaVariant::Mu);
        let s = SamplerConfig::default();
        let e = estimate_collinearity_constant(&f, &[vec![1.0, 0.0], vec![0.0, 1.0]], 0.5, &s).unwrap();
        assert!((e.c_alpha_estimate - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
        let e = estimate_collinearity_constant(&f, &[vec![3.0, 4.0]], 0.5, &s).unwrap();
        assert!((e.c_alpha_estimate - 5.0).abs() < 1e-9);
        let e = estimate_collinearity_constant(&f, &[vec![1.0, 0.0], vec![1.0, 1e-3]], 0.5, &s).unwrap();
        assert!((e.c_alpha_estimate - 5e-4).abs() < 5e-5, "{}", e.c_alpha_estimate);
        assert!(matches!(
            estimate_collinearity_constant(&f, &[vec![1.0, 2.0], vec![2.0, 4.0]], 0.5, &s),
            Err(Error::Rank { .. })
        ));
    }
}
