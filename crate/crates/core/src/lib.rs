//! Generalized intuitionistic fuzzy ψ-normed linear spaces over ℝⁿ.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: t-norms, t-conorms, circle operations on ℝ⁺ and ψ-functions,
//!   with sampled axiom checkers and the companion-value solvers.
//! - [`norm`]: the (μ, ν) norm pair, the standard construction from a crisp
//!   norm, and the sampled validator for the eleven defining axioms.
//! - [`alpha`]: crisp α-norms extracted by monotone bisection.
//! - [`sequence`] and [`sets`]: convergence, Cauchy, boundedness and
//!   compactness detectors over finite horizons.
//! - [`continuity`]: the three continuity notions for maps between spaces.
//!
//! Everything is pure and allocation-only; IO and file formats live in the
//! companion CLI crate.
#![cfg_attr(not(test), no_std)]
// Negated comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod algebra;
pub mod alpha;
pub mod continuity;
pub mod corpus;
pub mod error;
mod linalg;
pub mod map;
pub mod norm;
pub mod report;
pub mod sampler;
pub mod sequence;
pub mod sets;
pub mod vector;

pub use algebra::{CircleOp, FuzzyConnectives, PsiFunction, TConorm, TNorm};
pub use alpha::{AlphaNormFamily, AlphaVariant};
pub use error::{Error, Result};
pub use linalg::Basis;
pub use map::MapSpec;
pub use norm::{GifPsiNorm, MembershipPair, VectorSpaceConfig};
pub use report::{AxiomEntry, AxiomReport, Relation, Status, Witness};
pub use sampler::SamplerConfig;
pub use sequence::{ConvergenceReport, DetectorGrid, SequenceSpec, Verdict};
pub use sets::SetSpec;
pub use vector::CrispNorm;
