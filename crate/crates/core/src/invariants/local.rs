use serde::Serialize;

use crate::angle::{exterior_angle, face_density, AngleConfig};
use crate::error::{Error, Result};
use crate::numkit::special::{alpha, binomial};
use crate::polycone::{faces, ConvexCone};

/// Per-dimension sums Σ_{F ∈ F_k} γ(F, V) · Θ_k(F), k = 0..=n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceContributions {
    pub n: usize,
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    /// True when every angle entering the sums was computed exactly.
    pub exact: bool,
}

impl FaceContributions {
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

pub fn face_contributions(cone: &ConvexCone, cfg: &AngleConfig) -> Result<FaceContributions> {
    let n = cone.ambient_dim();
    let mut values = vec![0.0; n + 1];
    let mut var = vec![0.0; n + 1];
    let mut exact = true;
    for (idx, face) in faces(cone).iter().enumerate() {
        let idx = idx as u64;
        let gamma = exterior_angle(face, cone, &cfg.with_stream(cfg.stream.substream(2 * idx)))?;
        let theta = face_density(face, n, &cfg.with_stream(cfg.stream.substream(2 * idx + 1)))?;
        exact &= gamma.is_exact() && theta.is_exact();
        values[face.dim] += gamma.value * theta.value;
        var[face.dim] += (theta.value * gamma.stderr).powi(2) + (gamma.value * theta.stderr).powi(2);
    }
    Ok(FaceContributions { n, values, stderr: var.into_iter().map(f64::sqrt).collect(), exact })
}

/// |Σ_k Σ_{F ∈ F_k} γ(F, V) Θ_k(F) − 1|; zero up to rounding for every cone.
pub fn angle_sum_residual(cone: &ConvexCone, cfg: &AngleConfig) -> Result<f64> {
    Ok((face_contributions(cone, cfg)?.total() - 1.0).abs())
}

fn tail_sums(c: &FaceContributions, weight: impl Fn(usize, usize) -> f64) -> (Vec<f64>, Vec<f64>) {
    let n = c.n;
    let mut vals = vec![0.0; n + 1];
    let mut errs = vec![0.0; n + 1];
    vals[0] = 1.0;
    for i in 1..=n {
        vals[i] = (i..=n).map(|k| weight(i, k) * c.values[k]).sum();
        errs[i] = (i..=n).map(|k| (weight(i, k) * c.stderr[k]).powi(2)).sum::<f64>().sqrt();
    }
    (vals, errs)
}

/// a_i^k = α_k / (α_{k−i} α_i) · C(k, i), the weight of the k-face kernel in
/// Λ^loc_i.
pub fn lambda_weight(i: usize, k: usize) -> f64 {
    if k < i {
        return 0.0;
    }
    alpha(k) / (alpha(k - i) * alpha(i)) * binomial(k, i)
}

fn sigma_from(c: &FaceContributions) -> (Vec<f64>, Vec<f64>) {
    tail_sums(c, |_, _| 1.0)
}

fn lambda_from(c: &FaceContributions) -> (Vec<f64>, Vec<f64>) {
    tail_sums(c, lambda_weight)
}

/// σ_0..σ_n of a convex cone: σ_j = Σ_{k ≥ j} (k-face kernel), σ_0 = 1.
pub fn sigma_closed(cone: &ConvexCone, cfg: &AngleConfig) -> Result<Vec<f64>> {
    Ok(sigma_from(&face_contributions(cone, cfg)?).0)
}

/// Λ^loc_0..Λ^loc_n of a convex cone: Λ^loc_i = Σ_{k ≥ i} a_i^k (k-face
/// kernel), Λ^loc_0 = 1.
pub fn lambda_loc_closed(cone: &ConvexCone, cfg: &AngleConfig) -> Result<Vec<f64>> {
    Ok(lambda_from(&face_contributions(cone, cfg)?).0)
}

/// σ_* and Λ^loc_* of one germ with their uncertainties.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantProfile {
    pub n: usize,
    pub sigma: Vec<f64>,
    pub sigma_stderr: Vec<f64>,
    pub lambda_loc: Vec<f64>,
    pub lambda_loc_stderr: Vec<f64>,
    pub face_contributions: FaceContributions,
    pub angle_sum_residual: f64,
}

impl InvariantProfile {
    pub fn compute(cone: &ConvexCone, cfg: &AngleConfig) -> Result<Self> {
        let c = face_contributions(cone, cfg)?;
        let (sigma, sigma_stderr) = sigma_from(&c);
        let (lambda_loc, lambda_loc_stderr) = lambda_from(&c);
        Ok(InvariantProfile {
            n: c.n,
            sigma,
            sigma_stderr,
            lambda_loc,
            lambda_loc_stderr,
            angle_sum_residual: (c.total() - 1.0).abs(),
            face_contributions: c,
        })
    }
}

/// Upper-triangular matrix with unit diagonal taking σ_1..σ_n to
/// Λ^loc_1..Λ^loc_n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferMatrix {
    pub n: usize,
    /// rows[i−1][j−1] = m_i^j, zero below the diagonal
    pub rows: Vec<Vec<f64>>,
}

impl TransferMatrix {
    /// m_i^j with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i - 1][j - 1]
    }

    /// Λ^loc_0..Λ^loc_n from σ_0..σ_n (index 0 passes through).
    pub fn apply(&self, sigma: &[f64]) -> Vec<f64> {
        let mut out = vec![sigma[0]; self.n + 1];
        for i in 1..=self.n {
            out[i] = (i..=self.n).map(|j| self.get(i, j) * sigma[j]).sum();
        }
        out
    }

    /// Standard errors of [`apply`](Self::apply) for independent σ errors.
    pub fn apply_stderr(&self, sigma_stderr: &[f64]) -> Vec<f64> {
        let mut out = vec![sigma_stderr[0]; self.n + 1];
        for i in 1..=self.n {
            out[i] = (i..=self.n).map(|j| (self.get(i, j) * sigma_stderr[j]).powi(2)).sum::<f64>().sqrt();
        }
        out
    }
}

/// m_i^i = 1, m_i^j = a_i^j − a_i^{j−1} for j > i.
pub fn transfer_matrix(n: usize) -> Result<TransferMatrix> {
    if n == 0 {
        return Err(Error::Domain("transfer matrix needs n >= 1".into()));
    }
    let rows = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => 0.0,
                    std::cmp::Ordering::Equal => 1.0,
                    std::cmp::Ordering::Greater => lambda_weight(i, j) - lambda_weight(i, j - 1),
                })
                .collect()
        })
        .collect();
    Ok(TransferMatrix { n, rows })
}

/// max_i |Λ^loc_i − (M σ)_i| over i = 1..=n.
pub fn transfer_identity_deviation(profile: &InvariantProfile) -> Result<f64> {
    let m = transfer_matrix(profile.n)?;
    let pred = m.apply(&profile.sigma);
    Ok((1..=profile.n).map(|i| (profile.lambda_loc[i] - pred[i]).abs()).fold(0.0, f64::max))
}
