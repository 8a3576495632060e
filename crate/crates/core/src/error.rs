use alloc::string::String;

/// Errors raised by the library. Axiom failures are never errors: they are
/// entries in an [`AxiomReport`](crate::AxiomReport).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: expected dimension {expected}, got {found}")]
    Shape { expected: usize, found: usize },

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("level {alpha} is not reached below bracket cap {cap}")]
    UnreachableLevel { alpha: f64, cap: f64 },

    #[error("vectors are linearly dependent: rank {rank} < {expected}")]
    Rank { rank: usize, expected: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("coordinate {coordinate} is unbounded over the horizon (growth ratio {growth})")]
    Unbounded { coordinate: usize, growth: f64 },

    #[error("coordinate {coordinate} tail gap {gap:e} exceeds {tolerance:e}; the sequence is not Cauchy at this horizon")]
    Reconstruction {
        coordinate: usize,
        gap: f64,
        tolerance: f64,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("probe {probe} leaves the set at index {index}")]
    Probe { probe: usize, index: usize },

    #[error("horizon error: {0}")]
    Horizon(String),

    #[error("result failed its own verification: {0}")]
    Unverified(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("{name} = {v} lies outside [0, 1]")))
    }
}

pub(crate) fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("{name} = {v} must lie in open (0, 1)")))
    }
}
