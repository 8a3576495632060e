//! Maps between spaces, from a small catalog plus user closures.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{rank, RANK_TOLERANCE};
use crate::sets::SetSpec;
use crate::vector::{self, check_dim};

/// Per-coordinate scalar functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarFn {
    Scale(f64),
    Square,
    /// −1, 0 or 1; discontinuous at 0.
    Sign,
    Identity,
}

impl ScalarFn {
    pub fn eval(self, v: f64) -> f64 {
        match self {
            ScalarFn::Scale(c) => c * v,
            ScalarFn::Square => v * v,
            ScalarFn::Sign => {
                if v > 0.0 {
                    1.0
                } else if v < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            ScalarFn::Identity => v,
        }
    }
}

type MapFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

#[derive(Clone)]
pub struct CustomMap {
    name: String,
    f: Arc<MapFn>,
}

impl fmt::Debug for CustomMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomMap").field("name", &self.name).finish_non_exhaustive()
    }
}

impl PartialEq for CustomMap {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.f, &other.f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// x ↦ A x, A given row-major with `output_dim` rows.
    Linear { matrix: Vec<Vec<f64>> },
    /// x ↦ A x + b.
    Affine { matrix: Vec<Vec<f64>>, offset: Vec<f64> },
    Componentwise(ScalarFn),
    /// x ↦ x/‖x‖₂ for x ≠ θ, θ ↦ θ.
    RadialNormalize,
    Custom(CustomMap),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapSpec {
    kind: MapKind,
    input_dim: usize,
    output_dim: usize,
}

fn check_matrix(matrix: &[Vec<f64>]) -> Result<(usize, usize)> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 {
        return Err(Error::Domain("matrix must be nonempty".into()));
    }
    for r in matrix {
        check_dim(cols, r)?;
    }
    if matrix.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Domain("matrix entries must be finite".into()));
    }
    Ok((rows, cols))
}

impl MapSpec {
    pub fn linear(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let (rows, cols) = check_matrix(&matrix)?;
        Ok(MapSpec {
            kind: MapKind::Linear { matrix },
            input_dim: cols,
            output_dim: rows,
        })
    }

    pub fn affine(matrix: Vec<Vec<f64>>, offset: Vec<f64>) -> Result<Self> {
        let (rows, cols) = check_matrix(&matrix)?;
        check_dim(rows, &offset)?;
        Ok(MapSpec {
            kind: MapKind::Affine { matrix, offset },
            input_dim: cols,
            output_dim: rows,
        })
    }

    pub fn componentwise(dim: usize, f: ScalarFn) -> Self {
        MapSpec {
            kind: MapKind::Componentwise(f),
            input_dim: dim,
            output_dim: dim,
        }
    }

    pub fn identity(dim: usize) -> Self {
        MapSpec::componentwise(dim, ScalarFn::Identity)
    }

    pub fn scaling(dim: usize, c: f64) -> Self {
        MapSpec::componentwise(dim, ScalarFn::Scale(c))
    }

    pub fn radial_normalize(dim: usize) -> Self {
        MapSpec {
            kind: MapKind::RadialNormalize,
            input_dim: dim,
            output_dim: dim,
        }
    }

    /// Rotation of the first two coordinates by `angle`, then translation.
    pub fn rotation_shift(angle: f64, offset: Vec<f64>) -> Result<Self> {
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        MapSpec::affine(alloc::vec![alloc::vec![c, -s], alloc::vec![s, c]], offset)
    }

    pub fn custom(
        name: impl Into<String>,
        input_dim: usize,
        output_dim: usize,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        MapSpec {
            kind: MapKind::Custom(CustomMap {
                name: name.into(),
                f: Arc::new(f),
            }),
            input_dim,
            output_dim,
        }
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.input_dim, x)?;
        let y = self.eval(x);
        check_dim(self.output_dim, &y)?;
        Ok(y)
    }

    /// Unchecked evaluation.
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        match &self.kind {
            MapKind::Linear { matrix } => mat_vec(matrix, x),
            MapKind::Affine { matrix, offset } => vector::add(&mat_vec(matrix, x), offset),
            MapKind::Componentwise(f) => x.iter().map(|v| f.eval(*v)).collect(),
            MapKind::RadialNormalize => {
                let n = vector::euclidean(x);
                if n == 0.0 {
                    x.to_vec()
                } else {
                    x.iter().map(|v| v / n).collect()
                }
            }
            MapKind::Custom(c) => (c.f)(x),
        }
    }

    /// The affine part (A, b) when the map is affine.
    pub fn as_affine(&self) -> Option<(Vec<Vec<f64>>, Vec<f64>)> {
        let d = self.input_dim;
        match &self.kind {
            MapKind::Linear { matrix } => Some((matrix.clone(), vector::zeros(self.output_dim))),
            MapKind::Affine { matrix, offset } => Some((matrix.clone(), offset.clone())),
            MapKind::Componentwise(ScalarFn::Scale(c)) => Some((diag(d, *c), vector::zeros(d))),
            MapKind::Componentwise(ScalarFn::Identity) => Some((diag(d, 1.0), vector::zeros(d))),
            _ => None,
        }
    }

    /// f(S) as a set spec. Finite sets map pointwise; other sets need an
    /// invertible affine map.
    pub fn image_set(&self, set: &SetSpec) -> Result<SetSpec> {
        if let SetSpec::Finite { points } = set {
            if set.dimension() != self.input_dim {
                return Err(Error::Shape {
                    expected: self.input_dim,
                    found: set.dimension(),
                });
            }
            let pts = points.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
            return SetSpec::finite(pts);
        }
        let (matrix, offset) = self.as_affine().ok_or_else(|| {
            Error::Unsupported(format!(
                "image of a {} under a nonlinear map has no supported set spec",
                set.kind_name()
            ))
        })?;
        if self.input_dim != self.output_dim || rank(&matrix, RANK_TOLERANCE) < self.input_dim {
            return Err(Error::Unsupported(
                "image sets need an invertible square linear part".into(),
            ));
        }
        if set.dimension() != self.input_dim {
            return Err(Error::Shape {
                expected: self.input_dim,
                found: set.dimension(),
            });
        }
        Ok(SetSpec::LinearImage {
            matrix,
            offset,
            source: Box::new(set.clone()),
        })
    }
}

fn diag(d: usize, c: f64) -> Vec<Vec<f64>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { c } else { 0.0 }).collect())
        .collect()
}

pub(crate) fn mat_vec(matrix: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    matrix
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
