use std::collections::{BTreeMap, HashSet, VecDeque};

use super::cone::{ConvexCone, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::numkit::linalg::{dot, Basis, Vector, RANK_TOL};

/// A face of a cone, identified by the facet normals tight on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub dim: usize,
    /// Indices into the parent cone's facet normals.
    pub tight_normals: Vec<usize>,
    /// Indices into the parent cone's generators.
    pub generator_indices: Vec<usize>,
    pub generators: Vec<Vector>,
    pub span_basis: Basis,
}

impl Face {
    /// The face as a cone in the parent's ambient space.
    pub fn as_cone(&self, ambient_dim: usize) -> Result<ConvexCone> {
        if self.generators.is_empty() {
            return Ok(ConvexCone::zero(ambient_dim));
        }
        ConvexCone::from_generators(&self.generators, ambient_dim, DEFAULT_TOL)
    }
}

/// All faces of a cone, grouped by dimension. The cone itself is the unique
/// top face.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceLattice {
    pub ambient_dim: usize,
    pub faces_by_dim: BTreeMap<usize, Vec<Face>>,
}

impl FaceLattice {
    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces_by_dim.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.faces_by_dim.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of faces in each dimension 0..=top (zeros below the lineality).
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces_by_dim.keys().next_back().copied().unwrap_or(0);
        (0..=top).map(|k| self.faces_by_dim.get(&k).map_or(0, Vec::len)).collect()
    }

    pub fn top(&self) -> &Face {
        self.faces_by_dim.values().next_back().and_then(|v| v.first()).expect("lattice has a top face")
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.faces_by_dim.get(&face.dim).is_some_and(|fs| fs.iter().any(|f| f.tight_normals == face.tight_normals))
    }
}

struct Incidence<'a> {
    cone: &'a ConvexCone,
    /// tight[g][a]
    tight: Vec<Vec<bool>>,
}

impl<'a> Incidence<'a> {
    fn new(cone: &'a ConvexCone) -> Self {
        let tight = cone
            .generators()
            .iter()
            .map(|g| cone.facet_normals().iter().map(|a| dot(a, g).abs() <= DEFAULT_TOL).collect())
            .collect();
        Incidence { cone, tight }
    }

    /// Smallest face containing the given generators: (generators, normals).
    fn closure(&self, gens: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let normals: Vec<usize> =
            (0..self.cone.facet_normals().len()).filter(|&a| gens.iter().all(|&g| self.tight[g][a])).collect();
        let closed: Vec<usize> =
            (0..self.cone.generators().len()).filter(|&g| normals.iter().all(|&a| self.tight[g][a])).collect();
        (closed, normals)
    }

    fn face(&self, gens: Vec<usize>, normals: Vec<usize>) -> Face {
        let generators: Vec<Vector> = gens.iter().map(|&g| self.cone.generators()[g].clone()).collect();
        let span_basis = Basis::span_of(self.cone.ambient_dim(), &generators, RANK_TOL).expect("consistent dimensions");
        Face { dim: span_basis.dim(), tight_normals: normals, generator_indices: gens, generators, span_basis }
    }
}

/// Enumerates every face as a distinct closure of generator subsets: starting
/// from the cone, each face is cut by every facet hyperplane not yet tight on
/// it, and the result is closed again.
pub fn faces(cone: &ConvexCone) -> FaceLattice {
    let inc = Incidence::new(cone);
    let all: Vec<usize> = (0..cone.generators().len()).collect();
    let top = inc.closure(&all);

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut by_dim: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
    seen.insert(top.1.clone());
    queue.push_back(top);
    while let Some((gens, normals)) = queue.pop_front() {
        for a in 0..cone.facet_normals().len() {
            if normals.contains(&a) {
                continue;
            }
            let cut: Vec<usize> = gens.iter().copied().filter(|&g| inc.tight[g][a]).collect();
            let next = inc.closure(&cut);
            if seen.insert(next.1.clone()) {
                queue.push_back(next);
            }
        }
        let face = inc.face(gens, normals);
        by_dim.entry(face.dim).or_default().push(face);
    }
    for fs in by_dim.values_mut() {
        fs.sort_by(|a, b| a.generator_indices.cmp(&b.generator_indices));
    }
    FaceLattice { ambient_dim: cone.ambient_dim(), faces_by_dim: by_dim }
}

/// Checks that `face` is a face of `cone` (same generators, same closure).
pub fn check_membership(face: &Face, cone: &ConvexCone) -> Result<()> {
    let inc = Incidence::new(cone);
    let ok_indices = face.generator_indices.iter().all(|&g| g < cone.generators().len())
        && face.tight_normals.iter().all(|&a| a < cone.facet_normals().len());
    if !ok_indices {
        return Err(Error::FaceNotInLattice);
    }
    let same_gens = face.generator_indices.iter().zip(&face.generators).all(|(&g, v)| &cone.generators()[g] == v);
    let (closed, normals) =
        if face.generator_indices.is_empty() { inc.closure(&[]) } else { inc.closure(&face.generator_indices) };
    if same_gens && closed == face.generator_indices && normals == face.tight_normals {
        Ok(())
    } else {
        Err(Error::FaceNotInLattice)
    }
}

/// The cone positively generated by the facet normals tight on `face`;
/// {0} for the top face of a full-dimensional cone.
pub fn conormal_cone(face: &Face, cone: &ConvexCone) -> Result<ConvexCone> {
    check_membership(face, cone)?;
    let gens: Vec<Vector> = face.tight_normals.iter().map(|&a| cone.facet_normals()[a].clone()).collect();
    if gens.is_empty() {
        return Ok(ConvexCone::zero(cone.ambient_dim()));
    }
    ConvexCone::from_generators(&gens, cone.ambient_dim(), DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    fn half_plane() -> ConvexCone {
        ConvexCone::from_generators(&[v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0])], 2, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn octant_f_vector() {
        let l = faces(&ConvexCone::orthant(3));
        assert_eq!(l.f_vector(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn quadrant_f_vector() {
        assert_eq!(faces(&ConvexCone::orthant(2)).f_vector(), vec![1, 2, 1]);
    }

    #[test]
    fn half_plane_has_no_vertex_or_rays() {
        let l = faces(&half_plane());
        assert_eq!(l.faces_by_dim.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn zero_cone_lattice() {
        let l = faces(&ConvexCone::zero(3));
        assert_eq!(l.f_vector(), vec![1]);
    }

    #[test]
    fn conormal_cones_of_quadrant() {
        let q = ConvexCone::orthant(2);
        let l = faces(&q);
        let vertex = &l.faces_by_dim[&0][0];
        let c = conormal_cone(vertex, &q).unwrap();
        assert_eq!(c.generators().len(), 2);
        assert!(c.contains(&[-1.0, -1.0], 1e-12) && !c.contains(&[1.0, 0.0], 1e-12));

        let ray_e1 = l.faces_by_dim[&1].iter().find(|f| f.generators[0][0] > 0.5).unwrap();
        let c = conormal_cone(ray_e1, &q).unwrap();
        assert_eq!(c.generators(), &[v(&[0.0, -1.0])]);

        let top = l.top();
        assert_eq!(conormal_cone(top, &q).unwrap().dim(), 0);
    }

    #[test]
    fn foreign_face_rejected() {
        let q = ConvexCone::orthant(2);
        let other = faces(&half_plane());
        let f = &other.faces_by_dim[&1][0];
        assert_eq!(conormal_cone(f, &q).unwrap_err(), Error::FaceNotInLattice);
    }

    #[test]
    fn square_pyramid_is_not_simple() {
        // four rays around an apex: vertex lies on four facets
        let gens: Vec<Vector> =
            [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]].iter().map(|c| v(c)).collect();
        let c = ConvexCone::from_generators(&gens, 3, DEFAULT_TOL).unwrap();
        assert_eq!(faces(&c).f_vector(), vec![1, 4, 4, 1]);
    }
}
