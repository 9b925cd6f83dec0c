//! Closed-form invariants of polyhedral germs.
//!
//! Everything here is built from one kernel: for each dimension k, the sum
//! over k-faces F of γ(F, V) · Θ_k(F), the exterior angle times the face
//! density. Tail sums of that kernel give the polar invariants σ_j, weighted
//! tail sums give the local curvatures Λ^loc_i, and the transfer matrix links
//! the two.

mod local;
mod polytope;

pub use local::{
    angle_sum_residual, face_contributions, lambda_loc_closed, lambda_weight, sigma_closed,
    transfer_identity_deviation, transfer_matrix, FaceContributions, InvariantProfile, TransferMatrix,
};
pub use polytope::{
    ball_intrinsic_volumes, face_volume, polytope_intrinsic_volumes, steiner_coefficients, steiner_polynomial,
    IntrinsicVolumes,
};
