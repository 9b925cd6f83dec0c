//! Distance to an intersection of convex sets by Dykstra's alternating
//! projections.

use super::linalg::{axpy, dot, norm, sub, Basis, Vector};
use super::nnls::{default_max_iter, nnls};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum ConvexSet {
    /// {x : ⟨normal, x⟩ ≤ offset}
    HalfSpace { normal: Vector, offset: f64 },
    /// {x : ‖x − center‖ ≤ radius}
    Ball { center: Vector, radius: f64 },
    /// point + span(basis)
    Affine { point: Vector, basis: Basis },
    /// Nonnegative combinations of `generators`; projection by NNLS.
    Cone { generators: Vec<Vector> },
}

impl ConvexSet {
    fn project(&self, y: &[f64]) -> Result<Vec<f64>> {
        Ok(match self {
            ConvexSet::HalfSpace { normal, offset } => {
                let excess = dot(normal, y) - offset;
                let mut out = y.to_vec();
                if excess > 0.0 {
                    axpy(-excess / dot(normal, normal), normal, &mut out);
                }
                out
            }
            ConvexSet::Ball { center, radius } => {
                let d = sub(y, center);
                let r = norm(&d);
                if r <= *radius {
                    y.to_vec()
                } else {
                    let mut out = center.to_vec();
                    axpy(radius / r, &d, &mut out);
                    out
                }
            }
            ConvexSet::Affine { point, basis } => {
                let d = sub(y, point);
                let mut out = point.to_vec();
                let p = basis.project(&d);
                axpy(1.0, &p, &mut out);
                out
            }
            ConvexSet::Cone { generators } => {
                if generators.is_empty() {
                    vec![0.0; y.len()]
                } else {
                    let sol = nnls(generators, y, 1e-13, default_max_iter(generators.len(), y.len()))?;
                    sol.fitted(generators, y.len())
                }
            }
        })
    }

    fn violation(&self, x: &[f64]) -> f64 {
        match self {
            ConvexSet::HalfSpace { normal, offset } => ((dot(normal, x) - offset) / norm(normal)).max(0.0),
            ConvexSet::Ball { center, radius } => (norm(&sub(x, center)) - radius).max(0.0),
            _ => self.project(x).map(|p| norm(&sub(x, &p))).unwrap_or(f64::INFINITY),
        }
    }

    fn scale(&self) -> f64 {
        match self {
            ConvexSet::HalfSpace { normal, offset } => offset.abs() / norm(normal),
            ConvexSet::Ball { center, radius } => norm(center) + radius,
            ConvexSet::Affine { point, .. } => norm(point),
            ConvexSet::Cone { .. } => 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distance {
    Finite(f64),
    /// The intersection is empty (iterates escaped the certificate radius).
    Infeasible,
}

impl Distance {
    pub fn value(self) -> f64 {
        match self {
            Distance::Finite(d) => d,
            Distance::Infeasible => f64::INFINITY,
        }
    }
}

/// Distance from `point` to the intersection of `sets`.
///
/// Stops once a full sweep moves neither the iterate nor any correction term
/// by more than `tol` (relative to the problem scale) and every set is
/// satisfied within `tol`.
pub fn dykstra_distance(point: &[f64], sets: &[ConvexSet], tol: f64, max_iter: usize) -> Result<Distance> {
    if sets.is_empty() {
        return Err(Error::Empty("dykstra needs at least one set"));
    }
    let scale = sets.iter().map(ConvexSet::scale).fold(norm(point), f64::max).max(1.0);
    let escape = 1e6 * scale;
    let eps = tol * scale;

    let mut x = point.to_vec();
    let mut corr: Vec<Vec<f64>> = vec![vec![0.0; point.len()]; sets.len()];
    for _ in 0..max_iter {
        let mut change = 0.0f64;
        for (set, c) in sets.iter().zip(corr.iter_mut()) {
            let mut y = x.clone();
            axpy(1.0, c, &mut y);
            let next = set.project(&y)?;
            let new_c = sub(&y, &next);
            change = change.max(norm(&sub(&new_c, c))).max(norm(&sub(&next, &x)));
            *c = new_c;
            x = next;
        }
        if norm(&x) > escape || corr.iter().any(|c| norm(c) > escape) {
            return Ok(Distance::Infeasible);
        }
        if change <= eps && sets.iter().all(|s| s.violation(&x) <= eps) {
            return Ok(Distance::Finite(norm(&sub(point, &x))));
        }
    }
    Err(Error::NoConvergence { solver: "dykstra", iterations: max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(normal: &[f64], offset: f64) -> ConvexSet {
        ConvexSet::HalfSpace { normal: Vector::from(normal), offset }
    }

    fn quadrant() -> Vec<ConvexSet> {
        vec![half(&[-1.0, 0.0], 0.0), half(&[0.0, -1.0], 0.0)]
    }

    fn unit_ball() -> ConvexSet {
        ConvexSet::Ball { center: Vector::zeros(2), radius: 1.0 }
    }

    #[test]
    fn projection_onto_corner() {
        let d = dykstra_distance(&[-1.0, -1.0], &quadrant(), 1e-12, DEFAULT_MAX_ITER).unwrap();
        assert!((d.value() - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn quarter_disk_from_outside() {
        let mut sets = quadrant();
        sets.push(unit_ball());
        let d = dykstra_distance(&[2.0, 0.0], &sets, 1e-12, DEFAULT_MAX_ITER).unwrap();
        assert!((d.value() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn inside_point_has_zero_distance() {
        let mut sets = quadrant();
        sets.push(unit_ball());
        let d = dykstra_distance(&[0.3, 0.3], &sets, 1e-12, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(d, Distance::Finite(0.0));
    }

    #[test]
    fn cone_descriptor_agrees_with_halfspaces() {
        let cone = ConvexSet::Cone { generators: vec![Vector::from(&[1.0, 0.0][..]), Vector::from(&[0.0, 1.0][..])] };
        for p in [[2.0, -0.5], [-3.0, 0.2], [-1.0, -1.0], [0.5, 2.0]] {
            let a = dykstra_distance(&p, &[cone.clone(), unit_ball()], 1e-12, DEFAULT_MAX_ITER).unwrap();
            let mut sets = quadrant();
            sets.push(unit_ball());
            let b = dykstra_distance(&p, &sets, 1e-12, DEFAULT_MAX_ITER).unwrap();
            assert!((a.value() - b.value()).abs() < 1e-9, "{p:?}");
        }
    }

    #[test]
    fn affine_line() {
        let line = ConvexSet::Affine {
            point: Vector::from(&[0.0, 1.0][..]),
            basis: Basis::standard(2).complement().complement(),
        };
        // full-plane "affine" set: distance zero
        let d = dykstra_distance(&[3.0, 4.0], &[line], 1e-12, 100).unwrap();
        assert!(d.value() < 1e-12);
        let horizontal = ConvexSet::Affine {
            point: Vector::from(&[0.0, 1.0][..]),
            basis: Basis::span_of(2, &[Vector::unit(2, 0)], 1e-9).unwrap(),
        };
        let d = dykstra_distance(&[3.0, 4.0], &[horizontal], 1e-12, 100).unwrap();
        assert!((d.value() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_sets_are_flagged() {
        let sets = [half(&[1.0], -1.0), half(&[-1.0], -1.0)];
        let res = dykstra_distance(&[0.0], &sets, 1e-12, DEFAULT_MAX_ITER);
        assert!(matches!(res, Ok(Distance::Infeasible) | Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn rejects_empty_set_list() {
        assert!(dykstra_distance(&[0.0], &[], 1e-12, 10).is_err());
    }
}
