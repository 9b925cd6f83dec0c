use super::cone::{ConvexCone, DEFAULT_TOL};
use super::lattice::{faces, Face};
use crate::error::{Error, Result};
use crate::numkit::linalg::{norm, Vector};

/// Convex hull of finitely many points, carried as the cone over the lifted
/// points {(v, 1)}.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Vector>,
    hom_cone: ConvexCone,
}

#[derive(Clone, Debug)]
pub struct PolytopeFace {
    pub dim: usize,
    pub vertex_indices: Vec<usize>,
    pub vertices: Vec<Vector>,
    /// The matching face of the homogenizing cone.
    pub hom_face: Face,
}

/// Builds a polytope from points; points that are not extreme are dropped.
pub fn homogenize(points: &[Vector]) -> Result<Polytope> {
    let n = points.first().ok_or(Error::Empty("polytope needs at least one vertex"))?.dim();
    let mut lifted = Vec::with_capacity(points.len());
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut l = p.to_vec();
        l.push(1.0);
        lifted.push(Vector::from(l));
    }
    let hom_cone = ConvexCone::from_generators(&lifted, n + 1, DEFAULT_TOL)?;
    let vertices = hom_cone
        .generators()
        .iter()
        .map(|g| Vector::from(g[..n].iter().map(|x| x / g[n]).collect::<Vec<_>>()))
        .collect();
    Ok(Polytope { ambient_dim: n, vertices, hom_cone })
}

impl Polytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.hom_cone.dim() - 1
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn hom_cone(&self) -> &ConvexCone {
        &self.hom_cone
    }

    /// Faces of the polytope: faces of the homogenizing cone other than its
    /// apex, shifted down one dimension.
    pub fn faces(&self) -> Vec<PolytopeFace> {
        faces(&self.hom_cone)
            .iter()
            .filter(|f| !f.generator_indices.is_empty())
            .map(|f| PolytopeFace {
                dim: f.dim - 1,
                vertex_indices: f.generator_indices.clone(),
                vertices: f.generator_indices.iter().map(|&k| self.vertices[k].clone()).collect(),
                hom_face: f.clone(),
            })
            .collect()
    }

    /// Outer normal cone of the polytope along `face`, in R^n.
    pub fn normal_cone(&self, face: &PolytopeFace) -> Result<ConvexCone> {
        let n = self.ambient_dim;
        let gens: Vec<Vector> = face
            .hom_face
            .tight_normals
            .iter()
            .map(|&a| Vector::from(&self.hom_cone.facet_normals()[a][..n]))
            .filter(|a| norm(a) > DEFAULT_TOL)
            .collect();
        if gens.is_empty() {
            return Ok(ConvexCone::zero(n));
        }
        ConvexCone::from_generators(&gens, n, DEFAULT_TOL)
    }

    /// Inequalities ⟨a, x⟩ ≤ b describing the polytope (equalities appear as
    /// opposite pairs).
    pub fn halfspaces(&self) -> Vec<(Vector, f64)> {
        let n = self.ambient_dim;
        self.hom_cone.facet_normals().iter().map(|a| (Vector::from(&a[..n]), -a[n])).collect()
    }

    /// Coordinate-wise bounds of the vertices.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.ambient_dim;
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for v in &self.vertices {
            for k in 0..n {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }
}

/// Vertices of the axis-aligned unit cube [0, 1]^n.
pub fn unit_cube_vertices(n: usize) -> Vec<Vector> {
    (0..1usize << n).map(|mask| Vector::from((0..n).map(|k| ((mask >> k) & 1) as f64).collect::<Vec<_>>())).collect()
}
