//! Intersections of the frame F = span{Z_κ : κ ∈ Θ} with rational subspaces,
//! with the indeterminates x_1..x_m standing for ξ_1..ξ_m.

mod dims;
mod frame;
mod maps;
mod subspace;
mod sweep;

pub use dims::{
    check_inequality, frame_intersection_dim, frame_intersection_dim_direct, intersection_dims,
    intersection_dims_direct, projection_matrix, projection_split_check, Dims, InequalityCheck,
};
pub use frame::ThetaFrame;
pub use maps::{
    case3_frame_identity, case3_frame_identity_with, glm_case3_map, glm_case3_map_with,
    pascal_identity_with, permutation_equivariance, scaling_identity,
};
pub use subspace::SubspaceBasis;
pub use sweep::{sample_seed, sweep, SweepConfig, SweepRecord};
