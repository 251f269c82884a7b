use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::lift::k_eval_matrix;
use super::SymError;
use crate::arith::rational::{random_rational, Rational, RationalField};
use crate::arith::ring::Ring;
use crate::arith::RingMatrix;

/// The invariant linear families on which the map is studied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    Sym,
    Full,
    Circulant,
    SymCirculant,
}

impl Space {
    pub const ALL: [Space; 4] = [Space::Sym, Space::Full, Space::Circulant, Space::SymCirculant];

    pub fn name(self) -> &'static str {
        match self {
            Space::Sym => "sym",
            Space::Full => "full",
            Space::Circulant => "circulant",
            Space::SymCirculant => "sym-circulant",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sym" => Ok(Space::Sym),
            "full" => Ok(Space::Full),
            "circulant" => Ok(Space::Circulant),
            "sym-circulant" | "sym_circulant" => Ok(Space::SymCirculant),
            other => Err(SymError::UnknownSpace(other.to_string())),
        }
    }
}

/// A space together with the matrix size. Each family is described by a
/// partition of the `q x q` grid into slots that share one value; the basis
/// is the set of slot indicator matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceSpec {
    pub space: Space,
    pub q: usize,
}

impl SubspaceSpec {
    pub fn new(space: Space, q: usize) -> Self {
        SubspaceSpec { space, q }
    }

    pub fn slot_of(&self, i: usize, j: usize) -> usize {
        let q = self.q;
        match self.space {
            Space::Sym => {
                let (a, b) = (i.min(j), i.max(j));
                a * q - a * (a + 1) / 2 + b
            }
            Space::Full => i * q + j,
            Space::Circulant => (j + q - i) % q,
            Space::SymCirculant => {
                let k = (j + q - i) % q;
                k.min(q - k)
            }
        }
    }

    pub fn slot_count(&self) -> usize {
        let q = self.q;
        match self.space {
            Space::Sym => q * (q + 1) / 2,
            Space::Full => q * q,
            Space::Circulant => q,
            Space::SymCirculant => q / 2 + 1,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.space, Space::Sym | Space::SymCirculant)
    }

    /// Grid positions belonging to each slot.
    pub fn positions(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.slot_count()];
        for i in 0..self.q {
            for j in 0..self.q {
                out[self.slot_of(i, j)].push((i, j));
            }
        }
        out
    }

    /// Slot indicator matrices.
    pub fn basis(&self) -> Vec<RingMatrix<Rational>> {
        let f = RationalField;
        (0..self.slot_count())
            .map(|s| RingMatrix::from_fn(self.q, |i, j| if self.slot_of(i, j) == s { f.one() } else { f.zero() }))
            .collect()
    }

    pub fn from_slot_values<E: Clone>(&self, values: &[E]) -> RingMatrix<E> {
        assert_eq!(values.len(), self.slot_count());
        RingMatrix::from_fn(self.q, |i, j| values[self.slot_of(i, j)].clone())
    }

    /// True iff all positions of each slot carry equal values.
    pub fn contains<E: Clone + PartialEq>(&self, m: &RingMatrix<E>) -> bool {
        m.size() == self.q
            && self.positions().iter().all(|pos| {
                let (i0, j0) = pos[0];
                pos.iter().all(|&(i, j)| m.get(i, j) == m.get(i0, j0))
            })
    }

    pub fn random_member<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> RingMatrix<Rational> {
        let values: Vec<Rational> = (0..self.slot_count()).map(|_| random_rational(rng, bound)).collect();
        self.from_slot_values(&values)
    }

    /// Probabilistic invariance check: the image of random members stays in
    /// the family.
    pub fn check_invariance(&self, trials: usize, seed: u64) -> Result<bool, SymError> {
        let mut rng = crate::seed::rng(seed);
        let f = RationalField;
        for _ in 0..trials {
            let x = self.random_member(&mut rng, 10_000);
            let y = k_eval_matrix(&f, &x)?;
            if !self.contains(&y) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_counts_match_partitions() {
        for q in 3..8 {
            for space in Space::ALL {
                let spec = SubspaceSpec::new(space, q);
                let pos = spec.positions();
                assert_eq!(pos.len(), spec.slot_count());
                assert!(pos.iter().all(|p| !p.is_empty()));
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        for space in Space::ALL {
            assert_eq!(space.name().parse::<Space>().unwrap(), space);
        }
        assert!("diag".parse::<Space>().is_err());
    }

    #[test]
    fn families_are_invariant() {
        for space in Space::ALL {
            let spec = SubspaceSpec::new(space, 5);
            assert!(spec.check_invariance(5, 11).unwrap(), "{space}");
        }
    }

    #[test]
    fn circulant_member_is_constant_on_cyclic_diagonals() {
        let spec = SubspaceSpec::new(Space::Circulant, 4);
        let mut rng = crate::seed::rng(3);
        let m = spec.random_member(&mut rng, 50);
        for i in 0..4 {
            assert_eq!(m.get(i, (i + 1) % 4), m.get(0, 1));
        }
        assert!(!SubspaceSpec::new(Space::Sym, 4).contains(&m) || m.is_symmetric());
    }
}
