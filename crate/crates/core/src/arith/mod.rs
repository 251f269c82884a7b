//! Exact scalar, polynomial, series and matrix kernels.

pub mod binform;
pub mod laurent;
pub mod matrix;
pub mod mpoly;
pub mod prime;
pub mod rational;
pub mod ring;
pub mod unipoly;

pub use binform::{tuple_content_clear, BinaryForm, BinaryForms};
pub use laurent::{series_invert, LaurentRing, LaurentSeries};
pub use matrix::{adjugate, adjugate_entries, det, series_mat_invert, RingMatrix};
pub use mpoly::{MPoly, MPolyRing};
pub use prime::{PrimeField, Residue};
pub use rational::{Rational, RationalField};
pub use ring::{ExactDiv, Field, Ring};
pub use unipoly::{uni_gcd, UniPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("every form in the tuple is zero")]
    AllZero,
    #[error("forms of degree {found} mixed with degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("exact division left a remainder")]
    ExactDivisionFailure,
    #[error("series has no nonzero coefficient within its precision")]
    ZeroSeries,
    #[error("series matrix is singular to the working precision")]
    SingularSeries,
}
