use crate::error::{Error, Result};
use crate::numkit::linalg::{dot, norm, Basis, Vector};
use crate::numkit::nnls::least_distance;
use crate::polycone::{ConvexCone, PolyUnion};

const FEASIBILITY_TOL: f64 = 1e-10;

/// point + span(directions).
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubspace {
    pub point: Vector,
    pub directions: Basis,
}

impl AffineSubspace {
    pub fn new(point: Vector, directions: Basis) -> Result<Self> {
        if point.dim() != directions.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: directions.ambient_dim(), found: point.dim() });
        }
        Ok(AffineSubspace { point, directions })
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.dim()
    }

    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    /// The point of the subspace closest to the origin.
    pub fn foot(&self) -> Vec<f64> {
        let p = self.directions.project(&self.point);
        self.point.iter().zip(p.iter()).map(|(a, b)| a - b).collect()
    }
}

/// Smallest norm of a point of `plane ∩ cone`, or `None` when they miss.
pub fn min_norm_point(cone: &ConvexCone, plane: &AffineSubspace) -> Result<Option<f64>> {
    let foot = plane.foot();
    let dirs = plane.directions.vectors();
    let mut g_rows = Vec::with_capacity(cone.facet_normals().len());
    let mut h = Vec::with_capacity(cone.facet_normals().len());
    for a in cone.facet_normals() {
        g_rows.push(dirs.iter().map(|d| -dot(a, d)).collect::<Vec<f64>>());
        h.push(dot(a, &foot));
    }
    let t = least_distance(&g_rows, &h, dirs.len(), FEASIBILITY_TOL)?;
    let foot_norm = norm(&foot);
    Ok(t.map(|t| foot_norm.hypot(norm(&t))))
}

/// Inclusion-exclusion terms of a union, prepared once for many fibers.
#[derive(Clone, Debug)]
pub struct FiberSolver {
    terms: Vec<(i32, ConvexCone)>,
}

impl FiberSolver {
    pub fn new(union: &PolyUnion) -> Result<Self> {
        let terms = union.intersection_terms()?.into_iter().map(|t| (t.sign, t.cone)).collect();
        Ok(FiberSolver { terms })
    }

    /// χ(X ∩ plane ∩ B(0, radius)). With a finite radius, a feasible
    /// min-norm point within 1% of the radius is reported as
    /// [`Error::TruncationSuspect`].
    pub fn euler(&self, plane: &AffineSubspace, radius: f64) -> Result<i32> {
        self.euler_inner(plane, radius, radius.is_finite())
    }

    /// As [`euler`](Self::euler) for a radius that is part of the set (the
    /// unit ball in Crofton slices), so no truncation check applies.
    pub fn euler_in_ball(&self, plane: &AffineSubspace, radius: f64) -> Result<i32> {
        self.euler_inner(plane, radius, false)
    }

    fn euler_inner(&self, plane: &AffineSubspace, radius: f64, check: bool) -> Result<i32> {
        let mut chi = 0;
        for (sign, cone) in &self.terms {
            if let Some(d) = min_norm_point(cone, plane)? {
                if check && d >= 0.99 * radius && d <= radius {
                    return Err(Error::TruncationSuspect { norm: d, radius });
                }
                if d <= radius {
                    chi += sign;
                }
            }
        }
        Ok(chi)
    }
}

/// χ(X ∩ plane ∩ B(0, radius)) by inclusion-exclusion over the members.
pub fn fiber_euler(union: &PolyUnion, plane: &AffineSubspace, radius: f64) -> Result<i32> {
    FiberSolver::new(union)?.euler(plane, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycone::DEFAULT_TOL;

    fn cone(gens: &[[f64; 2]]) -> ConvexCone {
        let g: Vec<Vector> = gens.iter().map(|g| Vector::from(&g[..])).collect();
        ConvexCone::from_generators(&g, 2, DEFAULT_TOL).unwrap()
    }

    fn line(point: [f64; 2], dir: [f64; 2]) -> AffineSubspace {
        let b = Basis::span_of(2, &[Vector::from(&dir[..])], 1e-12).unwrap();
        AffineSubspace::new(Vector::from(&point[..]), b).unwrap()
    }

    fn opposite() -> PolyUnion {
        PolyUnion::new(vec![cone(&[[1.0, 0.0], [0.0, 1.0]]), cone(&[[-1.0, 0.0], [0.0, -1.0]])]).unwrap()
    }

    #[test]
    fn line_through_quadrant() {
        let q = PolyUnion::single(ConvexCone::orthant(2));
        assert_eq!(fiber_euler(&q, &line([0.0, 1.0], [1.0, -0.5]), f64::INFINITY).unwrap(), 1);
    }

    #[test]
    fn line_missing_quadrant() {
        let q = PolyUnion::single(ConvexCone::orthant(2));
        assert_eq!(fiber_euler(&q, &line([0.0, -1.0], [1.0, -0.5]), f64::INFINITY).unwrap(), 0);
    }

    #[test]
    fn line_through_both_opposite_quadrants() {
        assert_eq!(fiber_euler(&opposite(), &line([0.3, 0.0], [1.0, 1.0]), f64::INFINITY).unwrap(), 2);
        assert_eq!(fiber_euler(&opposite(), &line([0.3, 0.0], [1.0, -1.0]), f64::INFINITY).unwrap(), 1);
    }

    #[test]
    fn radius_cuts_far_slices() {
        let q = PolyUnion::single(ConvexCone::orthant(2));
        // the line x + y = 3 is at distance 3/√2 from 0
        let l = line([3.0, 0.0], [1.0, -1.0]);
        assert_eq!(fiber_euler(&q, &l, 2.0).unwrap(), 0);
        assert_eq!(fiber_euler(&q, &l, 2.2).unwrap(), 1);
        assert!(matches!(fiber_euler(&q, &l, 2.13), Err(Error::TruncationSuspect { .. })));
    }

    #[test]
    fn min_norm_matches_geometry() {
        let q = ConvexCone::orthant(2);
        let d = min_norm_point(&q, &line([2.0, -1.0], [0.0, 1.0])).unwrap().unwrap();
        assert!((d - 2.0).abs() < 1e-10);
        let d = min_norm_point(&q, &line([1.0, 1.0], [1.0, -1.0])).unwrap().unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn point_fiber_is_membership() {
        let q = PolyUnion::single(ConvexCone::orthant(2));
        let pt = |x: f64, y: f64| AffineSubspace::new(Vector::from(vec![x, y]), Basis::empty(2)).unwrap();
        assert_eq!(fiber_euler(&q, &pt(0.2, 0.7), f64::INFINITY).unwrap(), 1);
        assert_eq!(fiber_euler(&q, &pt(-0.2, 0.7), f64::INFINITY).unwrap(), 0);
    }

    #[test]
    fn full_plane_counts_one_per_component_bound() {
        let full = AffineSubspace::new(Vector::zeros(2), Basis::standard(2)).unwrap();
        assert_eq!(fiber_euler(&opposite(), &full, f64::INFINITY).unwrap(), 1);
    }
}
