//! Monte Carlo oracles that evaluate the integral-geometric definitions
//! directly: Crofton slices for Λ_i, tube volumes with a Steiner fit, and
//! fiber Euler characteristics over random projections for σ_j. Unions are
//! handled by inclusion-exclusion over intersections of members.

mod fiber;
mod tube;

pub use fiber::{fiber_euler, min_norm_point, AffineSubspace, FiberSolver};
pub use tube::{
    default_tube_radii, piece_distances, steiner_fit_mc, tube_volume_mc, tube_volumes_mc, TubeTarget, TubeVolumes,
};

use serde::Serialize;

use crate::angle::AngleConfig;
use crate::error::{Error, Result};
use crate::invariants::InvariantProfile;
use crate::numkit::linalg::{Basis, Vector};
use crate::numkit::rng::{gaussian_frame, map_chunks, merge_all, unit_ball, unit_sphere, RngStream, Stats};
use crate::numkit::special::{alpha, beta};
use crate::polycone::PolyUnion;

pub const MIN_SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    /// Fibers are cut at B(0, radius_cap). Cones are scale invariant, so the
    /// default is unbounded; a finite cap enables the truncation check.
    pub radius_cap: f64,
    pub tube_radii: Option<Vec<f64>>,
    /// Directions drawn per random plane in the σ estimator.
    pub inner_directions: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { samples: 20_000, seed: 0, radius_cap: f64::INFINITY, tube_radii: None, inner_directions: 4 }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(Error::Domain(format!("need at least {MIN_SAMPLES} samples, got {}", self.samples)));
        }
        if !(self.radius_cap >= 10.0) {
            return Err(Error::Domain(format!("radius cap must be at least 10, got {}", self.radius_cap)));
        }
        if self.inner_directions == 0 {
            return Err(Error::Domain("inner_directions must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    pub fn exact(value: f64, seed: u64) -> Self {
        McEstimate { value, stderr: 0.0, samples: 0, seed }
    }

    pub fn scaled(self, s: f64) -> Self {
        McEstimate { value: self.value * s, stderr: self.stderr * s.abs(), ..self }
    }

    /// (self − reference) / combined stderr; 0 when both sides are exact
    /// and agree to rounding.
    pub fn z_score(&self, reference: f64, reference_stderr: f64) -> f64 {
        let s = self.stderr.hypot(reference_stderr);
        let d = self.value - reference;
        if s > 0.0 {
            d / s
        } else if d.abs() <= 1e-12 {
            0.0
        } else {
            f64::INFINITY.copysign(d)
        }
    }
}

fn finish(parts: Vec<Result<Stats>>, scale: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    let stats: Vec<Stats> = parts.into_iter().collect::<Result<_>>()?;
    let s = merge_all(&stats);
    Ok(McEstimate { value: scale * s.mean, stderr: scale * s.stderr(), samples, seed })
}

/// Λ_i(X ∩ B) by Crofton's formula: (α_i / β(n, i)) · E[χ(X ∩ B ∩ E)] over
/// affine (n−i)-planes E with uniform direction and offset uniform in the
/// unit i-ball of the orthogonal complement.
pub fn crofton_lambda_mc(union: &PolyUnion, i: usize, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let n = union.ambient_dim();
    if i > n {
        return Err(Error::Domain(format!("Crofton index {i} exceeds dimension {n}")));
    }
    let scale = alpha(i) / beta(n, i)?;
    let solver = FiberSolver::new(union)?;
    let stream = RngStream::new(cfg.seed).substream(10 + i as u64);
    let parts = map_chunks(&stream, cfg.samples, |rng, count| -> Result<Stats> {
        let mut s = Stats::default();
        for _ in 0..count {
            let frame = gaussian_frame(rng, n, n).into_vectors();
            let z = unit_ball(rng, i);
            let mut point = vec![0.0; n];
            for (zk, f) in z.iter().zip(&frame[..i]) {
                for d in 0..n {
                    point[d] += zk * f[d];
                }
            }
            let dirs = Basis::from_orthonormal(n, frame[i..].to_vec());
            let plane = AffineSubspace::new(Vector::from(point), dirs)?;
            s.push(solver.euler_in_ball(&plane, 1.0)? as f64);
        }
        Ok(s)
    });
    finish(parts, scale, cfg.samples, cfg.seed)
}

/// σ_j of a conical union: the mean fiber Euler characteristic χ(X ∩ (u + P^⊥))
/// over uniform j-planes P and uniform unit directions u in P. The stderr
/// treats each plane's inner mean as one observation.
pub fn sigma_mc(union: &PolyUnion, j: usize, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let n = union.ambient_dim();
    if j == 0 {
        return Ok(McEstimate::exact(1.0, cfg.seed));
    }
    if j > n {
        return Err(Error::Domain(format!("σ index {j} exceeds dimension {n}")));
    }
    let solver = FiberSolver::new(union)?;
    let inner = cfg.inner_directions;
    let outer = (cfg.samples / inner).max(2);
    let stream = RngStream::new(cfg.seed).substream(100 + j as u64);
    let parts = map_chunks(&stream, outer, |rng, count| -> Result<Stats> {
        let mut s = Stats::default();
        for _ in 0..count {
            let plane = gaussian_frame(rng, j, n);
            let normal = plane.complement();
            let mut acc = 0.0;
            for _ in 0..inner {
                let u = plane.lift(&unit_sphere(rng, j));
                acc += solver.euler(&AffineSubspace::new(u, normal.clone())?, cfg.radius_cap)? as f64;
            }
            s.push(acc / inner as f64);
        }
        Ok(s)
    });
    finish(parts, 1.0, outer * inner, cfg.seed)
}

/// σ_0..σ_n by [`sigma_mc`].
pub fn sigma_mc_all(union: &PolyUnion, cfg: &McConfig) -> Result<Vec<McEstimate>> {
    (0..=union.ambient_dim()).map(|j| sigma_mc(union, j, cfg)).collect()
}

/// Λ^loc_* of a conical union along both routes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnionLambda {
    /// Σ_S (−1)^{|S|+1} Λ^loc(⋂S) from closed forms.
    pub closed: Vec<f64>,
    pub closed_stderr: Vec<f64>,
    /// Tube-fit estimates Λ_i(X ∩ B) / α_i.
    pub mc: Vec<McEstimate>,
}

/// Closed-form Λ^loc_* of a union by inclusion-exclusion, with stderr.
pub fn lambda_loc_union_closed(union: &PolyUnion, angles: &AngleConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = union.ambient_dim();
    let mut values = vec![0.0; n + 1];
    let mut var = vec![0.0; n + 1];
    for (k, term) in union.intersection_terms()?.into_iter().enumerate() {
        let cfg = angles.with_stream(angles.stream.substream(k as u64));
        let p = InvariantProfile::compute(&term.cone, &cfg)?;
        for i in 0..=n {
            values[i] += term.sign as f64 * p.lambda_loc[i];
            var[i] += p.lambda_loc_stderr[i].powi(2);
        }
    }
    Ok((values, var.into_iter().map(f64::sqrt).collect()))
}

pub fn lambda_loc_union(union: &PolyUnion, angles: &AngleConfig, cfg: &McConfig) -> Result<UnionLambda> {
    let (closed, closed_stderr) = lambda_loc_union_closed(union, angles)?;
    let fit = steiner_fit_mc(&TubeTarget::from_union(union)?, cfg)?;
    let mc = fit.into_iter().enumerate().map(|(i, e)| e.scaled(1.0 / alpha(i))).collect();
    Ok(UnionLambda { closed, closed_stderr, mc })
}
