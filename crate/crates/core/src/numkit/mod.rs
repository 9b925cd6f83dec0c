//! Dense linear algebra, special constants, deterministic sampling and the
//! two small convex solvers (NNLS, Dykstra) the geometry rests on.

pub mod dykstra;
pub mod linalg;
pub mod nnls;
pub mod rng;
pub mod special;
pub mod steiner;

pub use dykstra::{dykstra_distance, ConvexSet, Distance};
pub use linalg::{dot, norm, orthonormalize, Basis, Vector, RANK_TOL};
pub use nnls::{least_distance, nnls, NnlsSolution};
pub use rng::{RngStream, Stats};
pub use special::{alpha, beta, binomial, gamma};
pub use steiner::{fit_steiner, fit_steiner_gls, fit_steiner_with_covariance, SteinerFit};

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        self
    }
}
