//! Spherical measure of cones: solid angles (local densities Θ), exterior
//! angles of faces, and rotation-invariant sampling of subspaces.
//!
//! Every measurement is intrinsic: a cone is measured inside its own linear
//! span, so the result does not depend on the ambient dimension. Lineality is
//! factored out first (a product with a full subspace has the same density),
//! leaving a pointed cone of dimension p. For p ≤ 3 the value is exact; above
//! that it is estimated by uniform sampling on the sphere.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::linalg::{dot, norm, Basis, Vector, RANK_TOL};
use crate::numkit::rng::{gaussian_frame, map_chunks, unit_sphere, RngStream};
use crate::polycone::{check_membership, conormal_cone, ConvexCone, Face, DEFAULT_TOL};

pub const DEFAULT_ANGLE_SAMPLES: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleMethod {
    Exact1d,
    Exact2d,
    Exact3d,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleResult {
    /// Fraction of the unit sphere of the span covered by the cone.
    pub value: f64,
    pub stderr: f64,
    pub method: AngleMethod,
    pub samples: usize,
}

impl AngleResult {
    fn exact(value: f64, method: AngleMethod) -> Self {
        AngleResult { value, stderr: 0.0, method, samples: 0 }
    }

    pub fn is_exact(&self) -> bool {
        self.method != AngleMethod::MonteCarlo
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleConfig {
    pub samples: usize,
    pub stream: RngStream,
    pub force_mc: bool,
}

impl Default for AngleConfig {
    fn default() -> Self {
        AngleConfig { samples: DEFAULT_ANGLE_SAMPLES, stream: RngStream::new(0), force_mc: false }
    }
}

impl AngleConfig {
    pub fn with_stream(self, stream: RngStream) -> Self {
        AngleConfig { stream, ..self }
    }
}

/// Orthonormal i-frame whose span is distributed by the rotation-invariant
/// probability measure on the Grassmannian G(i, n).
pub fn grassmann_sample<R: Rng + ?Sized>(rng: &mut R, i: usize, n: usize) -> Basis {
    assert!(i <= n, "grassmann_sample needs i <= n");
    gaussian_frame(rng, i, n)
}

/// The pointed part of `cone`: its image in span(cone) ∩ lineality^⊥,
/// expressed in an orthonormal frame of that subspace.
fn pointed_part(cone: &ConvexCone) -> Result<ConvexCone> {
    let n = cone.ambient_dim();
    let lin = cone.lineality_basis();
    let reduced: Vec<Vector> = cone
        .generators()
        .iter()
        .map(|g| {
            let p = lin.project(g);
            Vector::from(crate::numkit::linalg::sub(g, &p))
        })
        .filter(|g| norm(g) > DEFAULT_TOL)
        .collect();
    let frame = Basis::span_of(n, &reduced, RANK_TOL)?;
    let coords: Vec<Vector> = reduced.iter().map(|g| Vector::from(frame.coords(g))).collect();
    if coords.is_empty() {
        return Ok(ConvexCone::zero(0));
    }
    ConvexCone::from_generators(&coords, frame.dim(), DEFAULT_TOL)
}

fn planar_fraction(u: &[f64], v: &[f64]) -> f64 {
    let cross = u[0] * v[1] - u[1] * v[0];
    cross.abs().atan2(dot(u, v)) / (2.0 * PI)
}

/// Solid angle of the spherical triangle with unit vertices a, b, c.
fn triangle_solid_angle(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let det =
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
    let denom = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * det.abs().atan2(denom)
}

/// Fraction of S² inside a pointed 3-d cone, by fanning its spherical
/// polygon from one vertex and summing triangle excesses.
fn spatial_fraction(rays: &[Vector]) -> f64 {
    let rays: Vec<Vec<f64>> = rays.iter().map(|r| r.normalized().to_vec()).collect();
    let mut center = vec![0.0; 3];
    for r in &rays {
        for k in 0..3 {
            center[k] += r[k];
        }
    }
    let c = Vector::from(center).normalized();
    let plane = Basis::span_of(3, &[c], RANK_TOL).expect("3-d").complement();
    let (e1, e2) = (&plane.vectors()[0], &plane.vectors()[1]);
    let mut order: Vec<(f64, usize)> =
        rays.iter().enumerate().map(|(k, r)| (dot(r, e2).atan2(dot(r, e1)), k)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let apex = &rays[order[0].1];
    let omega: f64 = order.windows(2).skip(1).map(|w| triangle_solid_angle(apex, &rays[w[0].1], &rays[w[1].1])).sum();
    omega / (4.0 * PI)
}

fn monte_carlo_fraction(pointed: &ConvexCone, cfg: &AngleConfig) -> AngleResult {
    let p = pointed.ambient_dim();
    let normals = pointed.facet_normals();
    let hits: u64 = map_chunks(&cfg.stream, cfg.samples, |rng, count| {
        let mut h = 0u64;
        for _ in 0..count {
            let z = unit_sphere(rng, p);
            if normals.iter().all(|a| dot(a, &z) <= 0.0) {
                h += 1;
            }
        }
        h
    })
    .into_iter()
    .sum();
    let n = cfg.samples as f64;
    let value = hits as f64 / n;
    let stderr = ((value * (1.0 - value)).max(1.0 / n) / n).sqrt();
    AngleResult { value, stderr, method: AngleMethod::MonteCarlo, samples: cfg.samples }
}

/// Θ_d of the cone at its apex, d = dim(cone): the fraction of the unit
/// sphere of span(cone) lying in the cone. Θ_0({0}) = 1.
pub fn solid_angle(cone: &ConvexCone, cfg: &AngleConfig) -> Result<AngleResult> {
    if cone.dim() > 0 && cone.generators().is_empty() {
        return Err(Error::EmptyCone);
    }
    if cone.dim() == 0 {
        return Ok(AngleResult::exact(1.0, AngleMethod::Exact1d));
    }
    let pointed = pointed_part(cone)?;
    let p = pointed.dim();
    if p == 0 {
        return Ok(AngleResult::exact(1.0, AngleMethod::Exact1d));
    }
    if cfg.force_mc || p >= 4 {
        if cfg.samples == 0 {
            return Err(Error::Domain("Monte-Carlo angle needs samples > 0".into()));
        }
        return Ok(monte_carlo_fraction(&pointed, cfg));
    }
    let rays = pointed.generators();
    Ok(match p {
        1 => AngleResult::exact(0.5, AngleMethod::Exact1d),
        2 => AngleResult::exact(planar_fraction(&rays[0], &rays[1]), AngleMethod::Exact2d),
        _ => AngleResult::exact(spatial_fraction(rays), AngleMethod::Exact3d),
    })
}

/// Θ_k(F_0): density of a face inside its own span.
pub fn face_density(face: &Face, ambient_dim: usize, cfg: &AngleConfig) -> Result<AngleResult> {
    solid_angle(&face.as_cone(ambient_dim)?, cfg)
}

/// γ(F, V): density of the conormal cone of `cone` along `face`; exactly 1
/// on the top face.
pub fn exterior_angle(face: &Face, cone: &ConvexCone, cfg: &AngleConfig) -> Result<AngleResult> {
    check_membership(face, cone)?;
    if face.dim == cone.dim() {
        return Ok(AngleResult::exact(1.0, AngleMethod::Exact1d));
    }
    solid_angle(&conormal_cone(face, cone)?, cfg)
}
