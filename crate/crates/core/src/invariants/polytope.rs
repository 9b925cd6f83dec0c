use serde::Serialize;

use crate::angle::{solid_angle, AngleConfig};
use crate::error::{Error, Result};
use crate::numkit::linalg::{norm, sub, Basis, Vector, RANK_TOL};
use crate::numkit::special::{alpha, binomial};
use crate::polycone::{Polytope, PolytopeFace};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntrinsicVolumes {
    /// Λ_0..Λ_n
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
}

fn affine_directions(points: &[Vector]) -> Result<Basis> {
    let n = points[0].dim();
    let dirs: Vec<Vector> = points[1..].iter().map(|p| Vector::from(sub(p, &points[0]))).collect();
    Basis::span_of(n, &dirs, RANK_TOL)
}

fn distance_to_hull(x: &[f64], points: &[Vector]) -> Result<f64> {
    let dirs = affine_directions(points)?;
    let d = sub(x, &points[0]);
    Ok(norm(&sub(&d, &dirs.project(&d))))
}

/// k-volume of every face, by pyramid decomposition:
/// vol(F) = (1/k) Σ_{facets G of F} dist(barycenter(F), aff G) · vol(G).
pub fn face_volume(faces: &[PolytopeFace]) -> Result<Vec<f64>> {
    let mut order: Vec<usize> = (0..faces.len()).collect();
    order.sort_by_key(|&i| faces[i].dim);
    let mut vol = vec![0.0; faces.len()];
    for &fi in &order {
        let f = &faces[fi];
        let span = affine_directions(&f.vertices)?.dim();
        if span != f.dim {
            return Err(Error::DegenerateFace { lattice_dim: f.dim, span_dim: span });
        }
        if f.dim == 0 {
            vol[fi] = 1.0;
            continue;
        }
        let n = f.vertices[0].dim();
        let mut bary = vec![0.0; n];
        for v in &f.vertices {
            for k in 0..n {
                bary[k] += v[k] / f.vertices.len() as f64;
            }
        }
        let mut acc = 0.0;
        for (gi, g) in faces.iter().enumerate() {
            if g.dim + 1 == f.dim && g.vertex_indices.iter().all(|v| f.vertex_indices.contains(v)) {
                acc += distance_to_hull(&bary, &g.vertices)? * vol[gi];
            }
        }
        vol[fi] = acc / f.dim as f64;
    }
    Ok(vol)
}

/// Λ_i(P) = Σ_{F ∈ F_i(P)} γ(F, P) · vol_i(F).
pub fn polytope_intrinsic_volumes(polytope: &Polytope, cfg: &AngleConfig) -> Result<IntrinsicVolumes> {
    let n = polytope.ambient_dim();
    let faces = polytope.faces();
    let vols = face_volume(&faces)?;
    let mut values = vec![0.0; n + 1];
    let mut var = vec![0.0; n + 1];
    for (idx, (f, v)) in faces.iter().zip(&vols).enumerate() {
        let gamma = if f.dim == polytope.dim() {
            1.0
        } else {
            let g = solid_angle(&polytope.normal_cone(f)?, &cfg.with_stream(cfg.stream.substream(idx as u64)))?;
            var[f.dim] += (g.stderr * v).powi(2);
            g.value
        };
        values[f.dim] += gamma * v;
    }
    Ok(IntrinsicVolumes { values, stderr: var.into_iter().map(f64::sqrt).collect() })
}

/// Tube-volume polynomial coefficients by power of r:
/// V(r) = Σ_p c_p r^p with c_p = Λ_{n−p} α_p.
pub fn steiner_coefficients(lambda: &[f64]) -> Vec<f64> {
    let n = lambda.len() - 1;
    (0..=n).map(|p| lambda[n - p] * alpha(p)).collect()
}

pub fn steiner_polynomial(polytope: &Polytope, cfg: &AngleConfig) -> Result<Vec<f64>> {
    Ok(steiner_coefficients(&polytope_intrinsic_volumes(polytope, cfg)?.values))
}

/// Λ_0..Λ_k of the unit k-ball: Λ_j = α_k / α_{k−j} · C(k, j).
pub fn ball_intrinsic_volumes(k: usize) -> Vec<f64> {
    (0..=k).map(|j| alpha(k) / alpha(k - j) * binomial(k, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycone::{homogenize, unit_cube_vertices};
    use std::f64::consts::PI;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    fn volumes(points: &[Vector]) -> Vec<f64> {
        polytope_intrinsic_volumes(&homogenize(points).unwrap(), &AngleConfig::default()).unwrap().values
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn unit_square() {
        assert!(close(&volumes(&unit_cube_vertices(2)), &[1.0, 2.0, 1.0], 1e-12));
    }

    #[test]
    fn unit_cube() {
        assert!(close(&volumes(&unit_cube_vertices(3)), &[1.0, 3.0, 3.0, 1.0], 1e-12));
    }

    #[test]
    fn segment_in_plane() {
        assert!(close(&volumes(&[v(&[0.0, 0.0]), v(&[1.0, 0.0])]), &[1.0, 1.0, 0.0], 1e-12));
    }

    #[test]
    fn point() {
        assert!(close(&volumes(&[v(&[0.5, 0.5, 0.5])]), &[1.0, 0.0, 0.0, 0.0], 1e-15));
    }

    #[test]
    fn right_triangle() {
        // legs 3 and 4: perimeter 12, area 6
        let l = volumes(&[v(&[0.0, 0.0]), v(&[3.0, 0.0]), v(&[0.0, 4.0])]);
        assert!(close(&l, &[1.0, 6.0, 6.0], 1e-12));
    }

    #[test]
    fn regular_tetrahedron_volume() {
        let pts = [v(&[1.0, 1.0, 1.0]), v(&[1.0, -1.0, -1.0]), v(&[-1.0, 1.0, -1.0]), v(&[-1.0, -1.0, 1.0])];
        let l = volumes(&pts);
        // edge 2√2: volume = a³/(6√2) = 8/3, surface = √3 a² = 8√3
        assert!((l[3] - 8.0 / 3.0).abs() < 1e-12);
        assert!((l[2] - 4.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((l[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_steiner() {
        let c = steiner_coefficients(&[1.0, 2.0, 1.0]);
        assert!(close(&c, &[1.0, 4.0, PI], 1e-14));
        assert!(close(&steiner_coefficients(&[1.0, 0.0, 0.0]), &[0.0, 0.0, PI], 1e-13));
        assert!(close(&steiner_coefficients(&[1.0, 1.0, 0.0]), &[0.0, 2.0, PI], 1e-13));
    }

    #[test]
    fn balls() {
        let b2 = ball_intrinsic_volumes(2);
        assert!(close(&b2, &[1.0, PI, PI], 1e-14));
        for k in 0..6 {
            let b = ball_intrinsic_volumes(k);
            assert!((b[0] - 1.0).abs() < 1e-14);
            assert!((b[k] - alpha(k)).abs() < 1e-13);
        }
    }

    #[test]
    fn box_valuation() {
        let boxed = |lo: [f64; 3], hi: [f64; 3]| -> Vec<f64> {
            let pts: Vec<Vector> = unit_cube_vertices(3)
                .iter()
                .map(|c| {
                    v(&[lo[0] + c[0] * (hi[0] - lo[0]), lo[1] + c[1] * (hi[1] - lo[1]), lo[2] + c[2] * (hi[2] - lo[2])])
                })
                .collect();
            volumes(&pts)
        };
        let a = boxed([0.0, 0.0, 0.0], [1.0, 2.0, 0.5]);
        let b = boxed([1.0, 0.0, 0.0], [2.5, 2.0, 0.5]);
        let ab = boxed([0.0, 0.0, 0.0], [2.5, 2.0, 0.5]);
        let shared = volumes(&[v(&[1.0, 0.0, 0.0]), v(&[1.0, 2.0, 0.0]), v(&[1.0, 0.0, 0.5]), v(&[1.0, 2.0, 0.5])]);
        for i in 0..=3 {
            assert!((a[i] + b[i] - ab[i] - shared[i]).abs() < 1e-10, "i = {i}");
        }
    }
}
