use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for every rank decision in the crate.
pub const RANK_TOL: f64 = 1e-9;

/// A point or direction in R^n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting NaN and infinite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Vector(coords))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn normalized(&self) -> Vector {
        let n = self.norm();
        Vector(self.0.iter().map(|c| c / n).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

impl From<&[f64]> for Vector {
    fn from(v: &[f64]) -> Self {
        Vector(v.to_vec())
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `y += s * x`
#[inline]
pub fn axpy(s: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

/// An orthonormal frame spanning an i-dimensional subspace of R^n.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    ambient_dim: usize,
    vectors: Vec<Vector>,
}

impl Basis {
    pub fn empty(ambient_dim: usize) -> Self {
        Basis { ambient_dim, vectors: Vec::new() }
    }

    pub fn standard(n: usize) -> Self {
        Basis { ambient_dim: n, vectors: (0..n).map(|k| Vector::unit(n, k)).collect() }
    }

    /// Wraps vectors the caller already knows to be orthonormal.
    pub(crate) fn from_orthonormal(ambient_dim: usize, vectors: Vec<Vector>) -> Self {
        Basis { ambient_dim, vectors }
    }

    /// Orthonormal basis for the span of `vectors` inside R^n.
    pub fn span_of(ambient_dim: usize, vectors: &[Vector], tol: f64) -> Result<Self> {
        for v in vectors {
            if v.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.dim() });
            }
        }
        let slices: Vec<&[f64]> = vectors.iter().map(|v| &v[..]).collect();
        Ok(Basis { ambient_dim, vectors: gram_schmidt(&slices, tol) })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the spanned subspace.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Coordinates of the orthogonal projection of `x` in this frame.
    pub fn coords(&self, x: &[f64]) -> Vec<f64> {
        self.vectors.iter().map(|b| dot(b, x)).collect()
    }

    /// Ambient point with the given frame coordinates.
    pub fn lift(&self, coords: &[f64]) -> Vector {
        let mut out = vec![0.0; self.ambient_dim];
        for (b, &c) in self.vectors.iter().zip(coords) {
            axpy(c, b, &mut out);
        }
        Vector(out)
    }

    /// Orthogonal projection onto the span, in ambient coordinates.
    pub fn project(&self, x: &[f64]) -> Vector {
        self.lift(&self.coords(x))
    }

    /// Orthonormal basis of the orthogonal complement.
    pub fn complement(&self) -> Basis {
        let n = self.ambient_dim;
        let mut candidates: Vec<Vec<f64>> = self.vectors.iter().map(|v| v.0.clone()).collect();
        candidates.extend((0..n).map(|k| Vector::unit(n, k).0));
        let slices: Vec<&[f64]> = candidates.iter().map(|v| &v[..]).collect();
        let full = gram_schmidt(&slices, RANK_TOL);
        Basis { ambient_dim: n, vectors: full.into_iter().skip(self.dim()).collect() }
    }

    pub fn into_vectors(self) -> Vec<Vector> {
        self.vectors
    }
}

/// Gram-Schmidt with one reorthogonalization pass; a candidate is dropped
/// when its residual falls below `tol` times the largest input norm.
fn gram_schmidt(vectors: &[&[f64]], tol: f64) -> Vec<Vector> {
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for q in &out {
                let c = dot(q, &w);
                axpy(-c, q, &mut w);
            }
        }
        let wn = norm(&w);
        if wn >= tol * scale {
            w.iter_mut().for_each(|c| *c /= wn);
            out.push(Vector(w));
        }
    }
    out
}

/// Orthonormalizes `vectors` in order. The rank is decided by comparing each
/// residual against `tol` relative to the largest input norm.
pub fn orthonormalize(vectors: &[Vector], tol: f64) -> Result<Basis> {
    let n = vectors.first().map_or(0, |v| v.dim());
    Basis::span_of(n, vectors, tol)
}

pub fn rank(vectors: &[&[f64]], tol: f64) -> usize {
    gram_schmidt(vectors, tol).len()
}

/// Solves a square system by Gaussian elimination with partial pivoting.
/// `a` is row-major. Returns `None` for a numerically singular matrix.
pub fn solve_square(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let d = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let scale = a.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
    for col in 0..d {
        let piv = (col..d).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, piv);
        for row in col + 1..d {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                for k in col..=d {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; d];
    for row in (0..d).rev() {
        let s: f64 = (row + 1..d).map(|k| m[row][k] * x[k]).sum();
        x[row] = (m[row][d] - s) / m[row][row];
    }
    Some(x)
}

/// Least-squares solution of `min ‖Σ_k z_k cols[k] − b‖` by Householder QR.
/// Columns whose pivot collapses below `1e-12` of the column scale get a zero
/// coefficient.
pub fn lstsq_columns(cols: &[&[f64]], b: &[f64]) -> Vec<f64> {
    let m = b.len();
    let p = cols.len();
    // column-major working copy
    let mut a: Vec<Vec<f64>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut rhs = b.to_vec();
    let scale = cols.iter().map(|c| norm(c)).fold(0.0, f64::max);
    let mut diag_ok = vec![true; p];
    for k in 0..p.min(m) {
        let alpha = norm(&a[k][k..]);
        if alpha <= 1e-12 * scale {
            diag_ok[k] = false;
            continue;
        }
        let sign = if a[k][k] >= 0.0 { 1.0 } else { -1.0 };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] += sign * alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            continue;
        }
        for col in a.iter_mut().skip(k) {
            let s = 2.0 * dot(&v, &col[k..]) / vnorm2;
            axpy(-s, &v, &mut col[k..]);
        }
        let s = 2.0 * dot(&v, &rhs[k..]) / vnorm2;
        axpy(-s, &v, &mut rhs[k..]);
    }
    let mut z = vec![0.0; p];
    for k in (0..p.min(m)).rev() {
        if !diag_ok[k] {
            continue;
        }
        let s: f64 = (k + 1..p).map(|j| a[j][k] * z[j]).sum();
        z[k] = (rhs[k] - s) / a[k][k];
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    #[test]
    fn orthonormalize_keeps_an_orthonormal_pair() {
        let b = orthonormalize(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], RANK_TOL).unwrap();
        assert_eq!(b.vectors(), &[v(&[1.0, 0.0]), v(&[0.0, 1.0])]);
    }

    #[test]
    fn orthonormalize_by_hand_example() {
        let b = orthonormalize(&[v(&[1.0, 1.0]), v(&[1.0, 0.0])], RANK_TOL).unwrap();
        let h = 0.5f64.sqrt();
        let expected = [[h, h], [h, -h]];
        for (got, want) in b.vectors().iter().zip(expected) {
            for k in 0..2 {
                assert!((got[k] - want[k]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn orthonormalize_drops_collinear() {
        let b = orthonormalize(&[v(&[1.0, 0.0]), v(&[2.0, 0.0])], RANK_TOL).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.vectors()[0], v(&[1.0, 0.0]));
    }

    #[test]
    fn orthonormalize_rejects_mixed_lengths() {
        let err = orthonormalize(&[v(&[1.0, 0.0]), v(&[1.0, 0.0, 0.0])], RANK_TOL).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn complement_completes_the_frame() {
        let b = orthonormalize(&[v(&[1.0, 1.0, 0.0])], RANK_TOL).unwrap();
        let c = b.complement();
        assert_eq!(c.dim(), 2);
        for q in c.vectors() {
            assert!(dot(q, &b.vectors()[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn lstsq_matches_direct_solve() {
        let cols: [&[f64]; 2] = [&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]];
        // normal equations: [[2,1],[1,2]] z = [1+3, 2+3]
        let z = lstsq_columns(&cols, &[1.0, 2.0, 3.0]);
        let direct = solve_square(&[vec![2.0, 1.0], vec![1.0, 2.0]], &[4.0, 5.0]).unwrap();
        for k in 0..2 {
            assert!((z[k] - direct[k]).abs() < 1e-13);
        }
    }

    #[test]
    fn vector_rejects_nan() {
        assert_eq!(Vector::new(vec![1.0, f64::NAN]), Err(Error::NonFinite));
    }
}
