//! Serialization of big numbers as decimal strings.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::arith::{Rational, RingMatrix};

pub fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn rational<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn rational_matrix<S: Serializer>(m: &RingMatrix<Rational>, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    s.collect_seq(rows)
}
