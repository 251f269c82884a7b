//! The six-dimensional linear model of the pullback action, its
//! characteristic polynomial and the exact spectral certificate.

pub mod model;
pub mod poly;

pub use model::{
    char_poly, char_poly_of, check_factor, check_factor_of, l1_matrix, model_sequence, quadratic_dominant_root,
    quadratic_factor, FactorReport, L1Matrix, PicVector, BASIS,
};
pub use poly::{bisect_root, certify_moduli_below, IntPolynomial, RootInterval};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("the linear model needs q >= 5, got q = {0}")]
    UnsupportedQ(usize),
}
