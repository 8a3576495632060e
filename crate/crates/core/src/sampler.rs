//! Seeded sampling shared by every randomized check.
//!
//! Each sample index gets its own ChaCha stream under the configured seed, so
//! the value drawn for sample `i` never depends on evaluation order.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Sampling parameters for the axiom validators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    /// Finite surrogate T∞ for the limit parts of axioms (vi)/(xi).
    pub horizon: f64,
    /// ε∞: μ(x, T∞) ≥ 1 − ε∞ and ν(x, T∞) ≤ ε∞ are demanded at the horizon.
    pub horizon_epsilon: f64,
    /// Ascending t-grid for monotonicity checks.
    pub t_grid: Vec<f64>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 42,
            samples: 10_000,
            tolerance: 1e-9,
            horizon: 1e6,
            horizon_epsilon: 1e-3,
            t_grid: log_grid(1e-3, 1e3, 13),
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        SamplerConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("sampler.samples must be > 0".into()));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::Config("sampler.tolerance must be > 0".into()));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(Error::Config("sampler.horizon must be > 0".into()));
        }
        if !(self.horizon_epsilon > 0.0 && self.horizon_epsilon < 1.0) {
            return Err(Error::Config(
                "sampler.horizon_epsilon must lie in open (0,1)".into(),
            ));
        }
        if self.t_grid.is_empty() {
            return Err(Error::Config("sampler.t_grid must be nonempty".into()));
        }
        if self.t_grid.iter().any(|t| !(*t > 0.0) || !t.is_finite())
            || self.t_grid.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Config(
                "sampler.t_grid must be strictly increasing and positive".into(),
            ));
        }
        Ok(())
    }

    /// Generator for sample `index` under this configuration's seed.
    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        stream(self.seed, index)
    }
}

pub fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Seed for an independent re-sampling pass, derived deterministically.
pub fn derived_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `count` points log-spaced over [lo, hi], endpoints included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return alloc::vec![lo];
    }
    let (a, b) = (libm::log10(lo), libm::log10(hi));
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                libm::pow(10.0, a + (b - a) * i as f64 / (count - 1) as f64)
            }
        })
        .collect()
}

pub fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    libm::exp(uniform(rng, libm::log(lo), libm::log(hi)))
}

/// Log-uniform magnitude in [lo, hi] with a random sign; never zero.
pub fn signed_log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let m = log_uniform(rng, lo, hi);
    if rng.random::<bool>() {
        m
    } else {
        -m
    }
}

pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; 1 - u keeps the logarithm finite.
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2)
}

/// Uniform direction on the Euclidean unit sphere of ℝᵈ.
pub fn unit_direction<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| standard_normal(rng)).collect();
        let n = crate::vector::euclidean(&v);
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

pub fn uniform_vector<R: Rng>(rng: &mut R, d: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..d).map(|_| uniform(rng, lo, hi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_order_independent() {
        let cfg = SamplerConfig::default();
        let a: f64 = cfg.rng(7).random();
        let _ = cfg.rng(3).random::<f64>();
        let b: f64 = cfg.rng(7).random();
        assert_eq!(a, b);
        assert_ne!(a, cfg.rng(8).random::<f64>());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-6, 1e3, 32);
        assert_eq!(g.len(), 32);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[31], 1e3);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = SamplerConfig {
            tolerance: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SamplerConfig {
            t_grid: alloc::vec![1.0, 0.5],
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        assert!(SamplerConfig::default().validate().is_ok());
    }
}
