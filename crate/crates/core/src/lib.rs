//! Local Lipschitz-Killing curvatures, polar invariants and intrinsic volumes
//! of polyhedral cones, cone unions and polytopes.
//!
//! The closed-form engine ([`invariants`]) expresses every quantity through
//! exterior angles and face densities of a cone's face lattice
//! ([`polycone`], [`angle`]). The Monte-Carlo oracles in [`crofton`] estimate
//! the same quantities straight from their integral-geometric definitions
//! (slice Euler characteristics, tube volumes, fiber counts of random
//! projections), so the two routes can be checked against each other.

pub mod angle;
pub mod cli;
pub mod crofton;
pub mod error;
pub mod invariants;
pub mod numkit;
pub mod polycone;

pub use error::{Error, Result};
pub use numkit::{Basis, RngStream, Vector};
pub use polycone::{ConvexCone, Face, FaceLattice, PolyUnion, Polytope};
