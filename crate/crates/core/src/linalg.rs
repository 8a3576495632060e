//! Small dense linear algebra: rank tests, square solves and bases of ℝᵈ.

use alloc::vec;
use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::{self, check_dim};

pub(crate) const RANK_TOLERANCE: f64 = 1e-10;

/// Numerical rank of a list of vectors by modified Gram–Schmidt; a vector
/// whose residual norm falls below `tol` times its original norm (or below
/// `tol` absolutely) adds nothing.
pub(crate) fn rank(vectors: &[Vec<f64>], tol: f64) -> usize {
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let scale = vector::euclidean(v);
        let mut r = v.clone();
        for q in &ortho {
            let dot: f64 = r.iter().zip(q).map(|(a, b)| a * b).sum();
            for (ri, qi) in r.iter_mut().zip(q) {
                *ri -= dot * qi;
            }
        }
        let n = vector::euclidean(&r);
        if n > tol * scale.max(1e-300) && n > tol * 1e-3 {
            ortho.push(r.into_iter().map(|c| c / n).collect());
        }
    }
    ortho.len()
}

/// Solves `a · z = b` for square `a` (row-major) by Gaussian elimination with
/// partial pivoting.
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = a.len();
    check_dim(n, b)?;
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(*bi);
            r
        })
        .collect();
    for row in &m {
        check_dim(n + 1, row)?;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| libm::fabs(m[i][col]).total_cmp(&libm::fabs(m[j][col])))
            .unwrap_or(col);
        if libm::fabs(m[pivot][col]) < 1e-300 {
            return Err(Error::Rank {
                rank: col,
                expected: n,
            });
        }
        m.swap(col, pivot);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f != 0.0 {
                let (top, bottom) = m.split_at_mut(r);
                for (dst, src) in bottom[0][col..=n].iter_mut().zip(&top[col][col..=n]) {
                    *dst -= f * src;
                }
            }
        }
    }
    let mut z = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * z[c]).sum();
        z[r] = (m[r][n] - s) / m[r][r];
    }
    Ok(z)
}

/// A basis e₁..e_d of ℝᵈ used for coordinate expansions xₙ = Σ βᵢ⁽ⁿ⁾ eᵢ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Basis {
    vectors: Vec<Vec<f64>>,
    #[serde(skip)]
    transpose: Vec<Vec<f64>>,
}

impl Basis {
    pub fn standard(d: usize) -> Self {
        Basis::new((0..d).map(|i| vector::basis_vector(d, i)).collect())
            .expect("the standard basis is independent")
    }

    /// Fails with a rank error unless the vectors form a basis of ℝᵈ.
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 {
            return Err(Error::Domain("a basis needs at least one vector".into()));
        }
        for v in &vectors {
            check_dim(d, v)?;
        }
        let r = rank(&vectors, RANK_TOLERANCE);
        if r < d {
            return Err(Error::Rank { rank: r, expected: d });
        }
        let transpose = (0..d)
            .map(|i| vectors.iter().map(|v| v[i]).collect())
            .collect();
        Ok(Basis { vectors, transpose })
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Coordinates β with Σ βᵢ eᵢ = x.
    pub fn coordinates(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dimension(), x)?;
        if self.is_standard() {
            return Ok(x.to_vec());
        }
        solve(&self.transpose, x)
    }

    pub fn combine(&self, beta: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dimension(), beta)?;
        let d = self.dimension();
        let mut out = vec![0.0; d];
        for (b, e) in beta.iter().zip(&self.vectors) {
            for (o, c) in out.iter_mut().zip(e) {
                *o += b * c;
            }
        }
        Ok(out)
    }

    fn is_standard(&self) -> bool {
        self.vectors
            .iter()
            .enumerate()
            .all(|(i, v)| v.iter().enumerate().all(|(j, c)| *c == if i == j { 1.0 } else { 0.0 }))
    }
}
