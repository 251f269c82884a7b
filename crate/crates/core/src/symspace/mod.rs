//! The symmetric-matrix space, the map `K = I o J` on it and its
//! primitive homogeneous lift.
//!
//! Evaluation works on the full `q x q` grid so the same code serves the
//! symmetric, full and circulant families; symmetry is a postcondition.

pub mod lift;
pub mod point;
pub mod subspace;

pub use lift::{
    factorization_check, homogeneity_check, k_eval, k_eval_matrix, khat, khat_matrix, matrix_inverse,
    primitivity_check, rank_of, reciprocal, rho_conjugate, symbolic_khat,
};
pub use point::{
    matrices_projectively_equal, normalize_projective, projective_eq, random_sym_point, random_symmetric_of_rank,
    slot_count, sym_indices, SymIndex, SymPoint,
};
pub use subspace::{Space, SubspaceSpec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("entry ({i}, {j}) is zero")]
    ZeroEntry { i: usize, j: usize },
    #[error("the entrywise reciprocal is singular")]
    SingularJ,
    #[error("exact division failed in the homogeneous lift")]
    ExactDivisionFailure,
    #[error("{check} check supports q <= {max}, got q = {q}")]
    ResourceBound { check: &'static str, q: usize, max: usize },
    #[error("matrix size q = {0} is not supported")]
    UnsupportedQ(usize),
    #[error("index {index} out of range for q = {q}")]
    IndexOutOfRange { index: usize, q: usize },
    #[error("unknown space `{0}` (expected sym, full, circulant or sym-circulant)")]
    UnknownSpace(String),
}
