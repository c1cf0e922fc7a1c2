//! Well-connected subsets of product string sets.
//!
//! For a universe `S = X_1 × … × X_n` with `|X_i| = d_i ≥ 2`, any set of more
//! than `∏d_i − ∏(d_i − 1)` strings contains a nonempty subset in which every
//! member has an odd number of neighbors along every axis. This crate computes
//! that bound, builds the extremal family that attains it, and extracts such
//! subsets through GF(2) elimination on the top boundary operator of the face
//! complex of `S`.
//!
//! Modules:
//! - [`strings`]: universe, faces, indexing, neighbors, pruning to the core
//! - [`gf2`]: bit-packed vectors and matrices, rank, kernels, dependencies
//! - [`chain`]: boundary operators and the dimension identities
//! - [`extremal`]: the extremal family and its cube relations
//! - [`witness`]: odd-connected and well-connected witness extraction

pub mod chain;
pub mod error;
pub mod extremal;
pub mod gf2;
pub mod strings;
pub mod witness;

pub use chain::{
    apply_boundary, boundary_matrix, boundary_of_face, ker_dim_by_elimination, ker_dim_formula,
    rank_by_elimination, rank_top_boundary, verify_dd_zero, verify_exactness, BoundaryMatrix,
    Chain,
};
pub use error::{Error, Result};
pub use extremal::{
    build_t0, cube_family, top_boundary_columns, verify_cube_relation, verify_t0_basis,
    ExtremalConfig,
};
pub use gf2::{find_dependency, kernel_basis, rank, BitMatrix, BitVector, DependencyFinder};
pub use strings::{
    face_index, face_unindex, i_neighbors, is_well_connected, prune_to_core, s_k_size,
    tight_bound, Arities, CoordString, Face, LevelIndex, StringSet,
};
pub use witness::{
    find_odd_connected_subset, find_well_connected_subset, verify_odd_connected, Method,
    WitnessReport,
};
