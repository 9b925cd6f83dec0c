//! Lawson-Hanson nonnegative least squares and the least-distance program it
//! solves as a by-product.

use super::linalg::{dot, lstsq_columns, norm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NnlsSolution {
    pub coefficients: Vec<f64>,
    /// ‖Σ λ_k a_k − b‖ at the optimum.
    pub residual: f64,
}

impl NnlsSolution {
    /// Point of the generated cone closest to the target.
    pub fn fitted<C: AsRef<[f64]>>(&self, columns: &[C], dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (c, &l) in columns.iter().zip(&self.coefficients) {
            for (o, a) in out.iter_mut().zip(c.as_ref()) {
                *o += l * a;
            }
        }
        out
    }
}

/// Minimizes ‖Σ λ_k columns[k] − target‖ over λ ≥ 0 with the Lawson-Hanson
/// active-set method. `tol` is the relative KKT tolerance on the dual vector.
pub fn nnls<C: AsRef<[f64]>>(columns: &[C], target: &[f64], tol: f64, max_iter: usize) -> Result<NnlsSolution> {
    let m = target.len();
    let cols: Vec<&[f64]> = columns.iter().map(|c| c.as_ref()).collect();
    if let Some(c) = cols.iter().find(|c| c.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: c.len() });
    }
    let p = cols.len();
    let col_norms: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let b_norm = norm(target).max(f64::MIN_POSITIVE);

    let mut x = vec![0.0; p];
    let mut passive = vec![false; p];
    let mut blocked = vec![false; p];
    let mut resid = target.to_vec();
    let mut iterations = 0;

    loop {
        let entering = (0..p)
            .filter(|&j| !passive[j] && !blocked[j] && col_norms[j] > 0.0)
            .map(|j| (j, dot(cols[j], &resid)))
            .filter(|&(j, w)| w > tol * col_norms[j] * b_norm)
            .max_by(|a, b| a.1.total_cmp(&b.1));
        let Some((j, _)) = entering else { break };
        passive[j] = true;

        let mut first = true;
        loop {
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::NoConvergence { solver: "nnls", iterations: max_iter });
            }
            let idx: Vec<usize> = (0..p).filter(|&k| passive[k]).collect();
            let sub: Vec<&[f64]> = idx.iter().map(|&k| cols[k]).collect();
            let z = lstsq_columns(&sub, target);

            if first {
                first = false;
                let zj = z[idx.iter().position(|&k| k == j).unwrap()];
                if zj <= 0.0 {
                    // entering column cannot move: numerically tied, skip it
                    passive[j] = false;
                    blocked[j] = true;
                    break;
                }
            }

            if z.iter().all(|&v| v > 0.0) {
                for (&k, &v) in idx.iter().zip(&z) {
                    x[k] = v;
                }
                break;
            }
            let mut step = f64::INFINITY;
            for (&k, &v) in idx.iter().zip(&z) {
                if v <= 0.0 {
                    step = step.min(x[k] / (x[k] - v));
                }
            }
            for (&k, &v) in idx.iter().zip(&z) {
                x[k] += step * (v - x[k]);
                if x[k] <= 1e-15 * (1.0 + x[k].abs()) {
                    x[k] = 0.0;
                    passive[k] = false;
                }
            }
        }

        resid.copy_from_slice(target);
        for (k, c) in cols.iter().enumerate() {
            if x[k] != 0.0 {
                for (r, a) in resid.iter_mut().zip(c.iter()) {
                    *r -= x[k] * a;
                }
            }
        }
        if blocked[j] && !passive[j] {
            continue;
        }
        blocked.iter_mut().for_each(|b| *b = false);
    }

    Ok(NnlsSolution { coefficients: x, residual: norm(&resid) })
}

/// Default iteration cap for problems of this shape.
pub fn default_max_iter(columns: usize, rows: usize) -> usize {
    3 * (columns + rows) + 50
}

/// Least-distance program: minimizes ‖t‖ subject to ⟨g_j, t⟩ ≥ h_j, with
/// t ∈ R^k. Returns `None` when the constraints are infeasible.
pub fn least_distance(g_rows: &[Vec<f64>], h: &[f64], k: usize, tol: f64) -> Result<Option<Vec<f64>>> {
    let cols: Vec<Vec<f64>> = g_rows
        .iter()
        .zip(h)
        .map(|(g, &hj)| {
            let mut c = g.clone();
            c.push(hj);
            c
        })
        .collect();
    let mut f = vec![0.0; k + 1];
    f[k] = 1.0;
    let sol = nnls(&cols, &f, 1e-12, default_max_iter(cols.len(), k + 1))?;
    let mut r = sol.fitted(&cols, k + 1);
    r[k] -= 1.0;
    if norm(&r) <= tol || r[k] >= 0.0 {
        return Ok(None);
    }
    let last = r[k];
    Ok(Some(r[..k].iter().map(|v| -v / last).collect()))
}
