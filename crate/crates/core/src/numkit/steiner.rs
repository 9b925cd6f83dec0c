use nalgebra::DMatrix;

use super::special::alpha;
use crate::error::{Error, Result};

/// Condition numbers (after column equilibration) above this are rejected.
pub const MAX_CONDITION: f64 = 1e10;

#[derive(Clone, Debug, PartialEq)]
pub struct SteinerFit {
    /// Λ_0..Λ_n
    pub coefficients: Vec<f64>,
    /// Covariance of the coefficients, when a volume covariance was supplied.
    pub covariance: Option<Vec<Vec<f64>>>,
    pub condition: f64,
}

impl SteinerFit {
    pub fn stderr(&self) -> Option<Vec<f64>> {
        self.covariance.as_ref().map(|c| (0..c.len()).map(|i| c[i][i].max(0.0).sqrt()).collect())
    }
}

fn validate_radii(radii: &[f64], n: usize) -> Result<()> {
    if radii.len() < n + 1 {
        return Err(Error::Domain(format!("need at least {} radii for n = {n}, got {}", n + 1, radii.len())));
    }
    for (a, ra) in radii.iter().enumerate() {
        if !(*ra > 0.0) || !ra.is_finite() {
            return Err(Error::Domain(format!("tube radius {ra} is not positive")));
        }
        if radii[..a].iter().any(|rb| rb == ra) {
            return Err(Error::Domain(format!("tube radius {ra} repeated")));
        }
    }
    Ok(())
}

/// Row k holds α_{n−i} r_k^{n−i} for i = 0..=n.
fn design(radii: &[f64], n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(radii.len(), n + 1, |k, i| alpha(n - i) * radii[k].powi((n - i) as i32))
}

/// Pseudo-inverse of `a` after column equilibration, with the condition
/// number of the equilibrated matrix.
fn pseudo_inverse(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    let cols = a.ncols();
    let col_scale: Vec<f64> = (0..cols).map(|i| a.column(i).norm()).collect();
    let mut scaled = a.clone();
    for (i, s) in col_scale.iter().enumerate() {
        scaled.column_mut(i).scale_mut(1.0 / s);
    }
    let svd = scaled.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let pinv = svd.pseudo_inverse(0.0).map_err(|_| Error::IllConditioned { condition })?;
    let unscale = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(cols, col_scale.iter().map(|s| 1.0 / s)));
    Ok((unscale * pinv, condition))
}

/// Least-squares map from volumes V(r_k) to (Λ_0..Λ_n).
fn steiner_solver(radii: &[f64], n: usize) -> Result<(DMatrix<f64>, f64)> {
    validate_radii(radii, n)?;
    pseudo_inverse(&design(radii, n))
}

fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

/// Reads Λ_0..Λ_n off tube volumes V(r) = Σ_i Λ_i α_{n−i} r^{n−i} by least
/// squares.
pub fn fit_steiner(radii: &[f64], volumes: &[f64], n: usize) -> Result<Vec<f64>> {
    Ok(fit_steiner_with_covariance(radii, volumes, n, None)?.coefficients)
}

/// As [`fit_steiner`], additionally propagating a covariance of the volumes.
pub fn fit_steiner_with_covariance(
    radii: &[f64],
    volumes: &[f64],
    n: usize,
    volume_cov: Option<&[Vec<f64>]>,
) -> Result<SteinerFit> {
    if volumes.len() != radii.len() {
        return Err(Error::DimensionMismatch { expected: radii.len(), found: volumes.len() });
    }
    let (solver, condition) = steiner_solver(radii, n)?;
    let v = nalgebra::DVector::from_column_slice(volumes);
    let coefficients = (&solver * v).iter().copied().collect();
    let covariance = volume_cov.map(|cov| {
        let k = radii.len();
        let sigma = DMatrix::from_fn(k, k, |a, b| cov[a][b]);
        to_rows(&(&solver * sigma * solver.transpose()))
    });
    Ok(SteinerFit { coefficients, covariance, condition })
}

/// Generalized least squares: weights the volumes by the inverse of their
/// covariance, which matters when many correlated radii are used. The
/// covariance of the result is (Aᵀ Σ⁻¹ A)⁻¹.
pub fn fit_steiner_gls(radii: &[f64], volumes: &[f64], n: usize, volume_cov: &[Vec<f64>]) -> Result<SteinerFit> {
    validate_radii(radii, n)?;
    let k = radii.len();
    if volumes.len() != k || volume_cov.len() != k || volume_cov.iter().any(|row| row.len() != k) {
        return Err(Error::DimensionMismatch { expected: k, found: volumes.len() });
    }
    let sigma = DMatrix::from_fn(k, k, |a, b| volume_cov[a][b]);
    let trace: f64 = (0..k).map(|a| sigma[(a, a)]).sum();
    let mut chol = sigma.clone().cholesky();
    if chol.is_none() {
        let ridge = 1e-12 * trace.max(f64::MIN_POSITIVE) / k as f64;
        chol = (sigma + DMatrix::identity(k, k) * ridge).cholesky();
    }
    let l = chol.ok_or(Error::IllConditioned { condition: f64::INFINITY })?.l();
    let a = design(radii, n);
    let whitened = l.solve_lower_triangular(&a).ok_or(Error::IllConditioned { condition: f64::INFINITY })?;
    let v = nalgebra::DVector::from_column_slice(volumes);
    let wv = l.solve_lower_triangular(&v).ok_or(Error::IllConditioned { condition: f64::INFINITY })?;
    let (solver, condition) = pseudo_inverse(&whitened)?;
    let coefficients = (&solver * wv).iter().copied().collect();
    let covariance = Some(to_rows(&(&solver * solver.transpose())));
    Ok(SteinerFit { coefficients, covariance, condition })
}

/// The linear map volumes → coefficients, row i giving Λ_i.
pub fn steiner_weights(radii: &[f64], n: usize) -> Result<Vec<Vec<f64>>> {
    let (solver, _) = steiner_solver(radii, n)?;
    Ok((0..=n).map(|i| solver.row(i).iter().copied().collect()).collect())
}
