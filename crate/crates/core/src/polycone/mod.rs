//! Convex polyhedral cones in both representations, their face lattices,
//! conormal cones, projections and intersections, plus finite unions of
//! cones and polytopes (through the cone over their lifted vertices).

mod cone;
mod dd;
mod lattice;
mod polytope;
mod union;

pub use cone::{
    cone_from_generators, dd_convert, intersect, project_cone, random_pointed_cone, random_pointed_generators,
    ConvexCone, DEFAULT_TOL,
};
pub use lattice::{check_membership, conormal_cone, faces, Face, FaceLattice};
pub use polytope::{homogenize, unit_cube_vertices, Polytope, PolytopeFace};
pub use union::{IntersectionTerm, PolyUnion, MAX_MEMBERS};
