//! Dense vectors of ℝⁿ and crisp norms on them.

use alloc::vec;
use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{Error, Result};

/// A crisp norm on ℝⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CrispNorm {
    /// ‖x‖ₚ = (Σ|xᵢ|ᵖ)^(1/p), p ≥ 1.
    P { p: f64 },
    /// ‖x‖∞ = maxᵢ |xᵢ|.
    Max,
}

impl CrispNorm {
    pub const EUCLIDEAN: CrispNorm = CrispNorm::P { p: 2.0 };

    pub fn validate(&self) -> Result<()> {
        match *self {
            CrispNorm::P { p } if !(p >= 1.0) || !p.is_finite() => {
                Err(Error::Domain(alloc::format!("p-norm needs p >= 1, got {p}")))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match *self {
            CrispNorm::P { p: 1.0 } => x.iter().map(|v| libm::fabs(*v)).sum(),
            CrispNorm::P { p: 2.0 } => libm::sqrt(x.iter().map(|v| v * v).sum()),
            CrispNorm::P { p } => {
                libm::pow(x.iter().map(|v| libm::pow(libm::fabs(*v), p)).sum::<f64>(), 1.0 / p)
            }
            CrispNorm::Max => x.iter().fold(0.0, |m, v| m.max(libm::fabs(*v))),
        }
    }
}

pub fn zeros(d: usize) -> Vec<f64> {
    vec![0.0; d]
}

pub fn basis_vector(d: usize, i: usize) -> Vec<f64> {
    let mut e = zeros(d);
    e[i] = 1.0;
    e
}

pub fn is_zero(x: &[f64]) -> bool {
    x.iter().all(|v| *v == 0.0)
}

pub fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(c: f64, x: &[f64]) -> Vec<f64> {
    x.iter().map(|a| c * a).collect()
}

pub(crate) fn sub_into(x: &[f64], y: &[f64], out: &mut [f64]) {
    for ((o, a), b) in out.iter_mut().zip(x).zip(y) {
        *o = a - b;
    }
}

pub fn euclidean(x: &[f64]) -> f64 {
    CrispNorm::EUCLIDEAN.eval(x)
}

pub(crate) fn check_dim(expected: usize, x: &[f64]) -> Result<()> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(Error::Shape {
            expected,
            found: x.len(),
        })
    }
}
