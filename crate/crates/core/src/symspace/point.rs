use rand::Rng;

use crate::arith::rational::{random_rational, Rational, RationalField};
use crate::arith::ring::{Field, Ring};
use crate::arith::RingMatrix;

/// Position `(i, j)` with `i <= j` in a symmetric `q x q` matrix, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymIndex {
    pub i: usize,
    pub j: usize,
}

impl SymIndex {
    /// Orders the pair so that `i <= j`.
    pub fn new(a: usize, b: usize) -> Self {
        SymIndex {
            i: a.min(b),
            j: a.max(b),
        }
    }

    /// Coordinate slot in row-major order over the upper triangle.
    pub fn slot(self, q: usize) -> usize {
        self.i * q - self.i * (self.i + 1) / 2 + self.j
    }

    pub fn from_slot(q: usize, slot: usize) -> Self {
        let mut i = 0;
        let mut start = 0;
        while start + (q - i) <= slot {
            start += q - i;
            i += 1;
        }
        SymIndex { i, j: i + slot - start }
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }
}

/// Number of coordinates of the symmetric space of size `q`.
pub fn slot_count(q: usize) -> usize {
    q * (q + 1) / 2
}

/// All indices in slot order.
pub fn sym_indices(q: usize) -> impl Iterator<Item = SymIndex> {
    (0..q).flat_map(move |i| (i..q).map(move |j| SymIndex { i, j }))
}

/// A point of the symmetric space in homogeneous coordinates `(y_ij, i <= j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoint<E> {
    q: usize,
    coords: Vec<E>,
}

impl<E: Clone> SymPoint<E> {
    pub fn new(q: usize, coords: Vec<E>) -> Self {
        assert_eq!(coords.len(), slot_count(q), "wrong number of coordinates");
        SymPoint { q, coords }
    }

    pub fn from_fn(q: usize, mut f: impl FnMut(SymIndex) -> E) -> Self {
        SymPoint {
            q,
            coords: sym_indices(q).map(&mut f).collect(),
        }
    }

    /// Reads the upper triangle; the caller guarantees symmetry.
    pub fn from_matrix(m: &RingMatrix<E>) -> Self {
        let q = m.size();
        Self::from_fn(q, |ix| m.get(ix.i, ix.j).clone())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.coords[SymIndex::new(i, j).slot(self.q)]
    }

    pub fn to_matrix(&self) -> RingMatrix<E> {
        RingMatrix::from_fn(self.q, |i, j| self.get(i, j).clone())
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> SymPoint<F> {
        SymPoint {
            q: self.q,
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

/// Scales a coordinate tuple so that its first nonzero entry is one.
/// Returns `None` for the zero tuple.
pub fn normalize_projective<F: Field>(field: &F, coords: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = coords.iter().find(|c| !field.is_zero(c))?;
    let inv = field.inv(lead)?;
    Some(coords.iter().map(|c| field.mul(c, &inv)).collect())
}

/// True iff the tuples are nonzero and proportional.
pub fn projective_eq<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> bool {
    match (normalize_projective(field, a), normalize_projective(field, b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Projective equality of two rational matrices viewed as points.
pub fn matrices_projectively_equal(a: &RingMatrix<Rational>, b: &RingMatrix<Rational>) -> bool {
    a.size() == b.size() && projective_eq(&RationalField, a.entries(), b.entries())
}

/// Symmetric point with independent random positive rationals of height
/// at most `bound`.
pub fn random_sym_point<R: Rng + ?Sized>(q: usize, rng: &mut R, bound: i64) -> SymPoint<Rational> {
    SymPoint::from_fn(q, |_| random_rational(rng, bound))
}

/// Random symmetric matrix of the given rank: `A^T diag(d) A` with `rank`
/// nonzero diagonal entries and a random integer matrix `A`.
pub fn random_symmetric_of_rank<R: Rng + ?Sized>(q: usize, rank: usize, rng: &mut R) -> RingMatrix<Rational> {
    let f = RationalField;
    let a = RingMatrix::from_fn(q, |_, _| f.embed_i64(rng.gen_range(-9..=9)));
    let d: Vec<Rational> = (0..q)
        .map(|k| {
            if k < rank {
                let v = rng.gen_range(1..=9);
                f.embed_i64(if rng.gen_bool(0.5) { v } else { -v })
            } else {
                f.zero()
            }
        })
        .collect();
    RingMatrix::from_fn(q, |i, j| {
        (0..q).fold(f.zero(), |acc, k| acc + a.get(k, i) * &d[k] * a.get(k, j))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_roundtrip() {
        for q in 1..8 {
            for (k, ix) in sym_indices(q).enumerate() {
                assert_eq!(ix.slot(q), k);
                assert_eq!(SymIndex::from_slot(q, k), ix);
            }
            assert_eq!(sym_indices(q).count(), slot_count(q));
        }
    }

    #[test]
    fn transposed_position_shares_slot() {
        let q = 5;
        assert_eq!(SymIndex::new(3, 1).slot(q), SymIndex::new(1, 3).slot(q));
    }

    #[test]
    fn matrix_is_symmetric() {
        let mut rng = crate::seed::rng(1);
        let p = random_sym_point(4, &mut rng, 100);
        let m = p.to_matrix();
        assert!(m.is_symmetric());
        assert_eq!(SymPoint::from_matrix(&m), p);
    }
}
