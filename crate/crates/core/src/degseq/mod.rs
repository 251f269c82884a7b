//! Iterate degrees measured on random lines over large prime fields, and
//! the growth-rate estimate built from them.

pub mod delta;
pub mod line;
pub mod sequence;

pub use delta::{delta_formula, estimate_delta, DeltaEstimate};
pub use line::{iterate_once, random_line, LinePath};
pub use sequence::{degree_sequence, DegreeEntry, DegreeSequence, SequenceConfig, Witness};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DegSeqError {
    #[error("degenerate line: {0}")]
    DegenerateLine(&'static str),
    #[error("the line meets the indeterminacy locus")]
    IndeterminateLine,
    #[error("witnesses disagree after retrying")]
    NoConsensus(Box<DegreeSequence>),
    #[error("no usable line after {0} attempts")]
    ResampleLimit(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
