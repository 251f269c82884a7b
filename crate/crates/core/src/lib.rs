pub mod arith;
pub mod charts;
pub mod degseq;
pub mod par;
pub mod picard;
pub mod seed;
mod serde_util;
pub mod symspace;
