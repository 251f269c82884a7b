use rand::Rng;

use super::DegSeqError;
use crate::arith::binform::{tuple_content_clear, BinaryForm, BinaryForms};
use crate::arith::matrix::{adjugate_entries, invert_field};
use crate::arith::prime::{PrimeField, Residue};
use crate::arith::{ArithError, RingMatrix};
use crate::par::Exec;
use crate::symspace::SubspaceSpec;

/// The restriction of an iterate to a projective line, stored as one
/// reduced binary form per slot of the subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct LinePath {
    spec: SubspaceSpec,
    field: PrimeField,
    seed: u64,
    forms: Vec<BinaryForm>,
    degree: usize,
}

impl LinePath {
    /// The line `u * a + v * b` through two members given by slot values.
    pub fn from_members(
        spec: SubspaceSpec,
        field: PrimeField,
        seed: u64,
        a: &[Residue],
        b: &[Residue],
    ) -> Result<Self, DegSeqError> {
        assert_eq!(a.len(), spec.slot_count());
        assert_eq!(b.len(), spec.slot_count());
        let forms: Vec<BinaryForm> = a.iter().zip(b).map(|(&x, &y)| BinaryForm::linear(x, y)).collect();
        if forms.iter().any(BinaryForm::is_zero) {
            return Err(DegSeqError::DegenerateLine("an entry vanishes on the whole line"));
        }
        let ring = BinaryForms::new(field);
        let (_, reduced) = tuple_content_clear(&ring, &forms).map_err(DegSeqError::from)?;
        let path = LinePath {
            spec,
            field,
            seed,
            degree: reduced[0].degree(),
            forms: reduced,
        };
        if path.degree != 1 {
            return Err(DegSeqError::DegenerateLine("the two members are proportional"));
        }
        if !path.reciprocal_generically_invertible(seed) {
            return Err(DegSeqError::DegenerateLine(
                "the reciprocal matrix is singular along the line",
            ));
        }
        Ok(path)
    }

    pub fn spec(&self) -> SubspaceSpec {
        self.spec
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// One form per slot of the subspace.
    pub fn slot_forms(&self) -> &[BinaryForm] {
        &self.forms
    }

    /// The full `q x q` grid of forms.
    pub fn grid(&self) -> RingMatrix<BinaryForm> {
        self.spec.from_slot_values(&self.forms)
    }

    /// Value of the grid at `(u, v)`.
    pub fn eval_grid(&self, u: Residue, v: Residue) -> RingMatrix<Residue> {
        let vals: Vec<Residue> = self.forms.iter().map(|f| f.eval(&self.field, u, v)).collect();
        self.spec.from_slot_values(&vals)
    }

    /// Tests at a few random points whether the entrywise reciprocal can be
    /// inverted somewhere on the line.
    fn reciprocal_generically_invertible(&self, seed: u64) -> bool {
        let mut rng = crate::seed::rng(crate::seed::split(seed, "line-check", 0));
        let f = &self.field;
        for _ in 0..4 {
            let u = f.random(&mut rng);
            let v = f.random(&mut rng);
            let m = self.eval_grid(u, v);
            if m.entries().contains(&0) {
                continue;
            }
            let j = m.map(|&x| f.invm(x).expect("nonzero"));
            if invert_field(f, &j).is_some() {
                return true;
            }
        }
        false
    }
}

/// A line through two random members of the subspace over `F_p`.
pub fn random_line(spec: SubspaceSpec, p: u64, seed: u64) -> Result<LinePath, DegSeqError> {
    let field = PrimeField::new(p);
    let mut rng = crate::seed::rng(seed);
    let n = spec.slot_count();
    let a: Vec<Residue> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    let b: Vec<Residue> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    LinePath::from_members(spec, field, seed, &a, &b)
}

/// Applies the map once: reciprocal with a common denominator, adjugate,
/// then removal of the common factor.
pub fn iterate_once(path: &LinePath, exec: Exec) -> Result<LinePath, DegSeqError> {
    let ring = BinaryForms::new(path.field);
    let forms = &path.forms;
    if forms.iter().any(BinaryForm::is_zero) {
        return Err(DegSeqError::IndeterminateLine);
    }
    // J-step: slot s gets the product of all other slots
    let n = forms.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(BinaryForm::new(0, vec![1]));
    for f in forms {
        let next = mul(&ring, prefix.last().unwrap(), f);
        prefix.push(next);
    }
    let mut suffix = BinaryForm::new(0, vec![1]);
    let mut recips = vec![BinaryForm::zero_of_degree(0); n];
    for s in (0..n).rev() {
        recips[s] = mul(&ring, &prefix[s], &suffix);
        suffix = mul(&ring, &forms[s], &suffix);
    }
    drop(prefix);
    // I-step: adjugate entries at one representative position per slot
    let grid = path.spec.from_slot_values(&recips);
    let reps: Vec<(usize, usize)> = path.spec.positions().iter().map(|p| p[0]).collect();
    let image = adjugate_entries(&ring, &grid, &reps, exec);
    let (_, reduced) = match tuple_content_clear(&ring, &image) {
        Ok(r) => r,
        Err(ArithError::AllZero) => return Err(DegSeqError::IndeterminateLine),
        Err(e) => return Err(e.into()),
    };
    if reduced.iter().any(BinaryForm::is_zero) {
        return Err(DegSeqError::IndeterminateLine);
    }
    Ok(LinePath {
        spec: path.spec,
        field: path.field,
        seed: path.seed,
        degree: reduced[0].degree(),
        forms: reduced,
    })
}

fn mul(ring: &BinaryForms, a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
    use crate::arith::ring::Ring;
    ring.mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime::random_prime;
    use crate::symspace::Space;

    fn prime(seed: u64) -> u64 {
        random_prime(&mut crate::seed::rng(seed))
    }

    #[test]
    fn first_iterate_degree() {
        for (q, expected) in [(3, 7), (4, 13), (5, 21)] {
            let spec = SubspaceSpec::new(Space::Sym, q);
            let line = random_line(spec, prime(1), 2).unwrap();
            let next = iterate_once(&line, Exec::Sequential).unwrap();
            assert_eq!(next.degree(), expected, "q={q}");
        }
    }

    #[test]
    fn symmetric_grid_stays_symmetric() {
        let spec = SubspaceSpec::new(Space::Sym, 4);
        let line = random_line(spec, prime(3), 4).unwrap();
        let next = iterate_once(&line, Exec::Sequential).unwrap();
        assert!(next.grid().is_symmetric());
    }

    #[test]
    fn circulant_line_structure() {
        let spec = SubspaceSpec::new(Space::Circulant, 5);
        let line = random_line(spec, prime(5), 6).unwrap();
        let g = line.grid();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(g.get(i, j), g.get((i + 1) % 5, (j + 1) % 5));
            }
        }
    }

    #[test]
    fn vanishing_entry_is_degenerate() {
        let spec = SubspaceSpec::new(Space::Sym, 5);
        let field = PrimeField::new(prime(7));
        let mut a: Vec<u64> = (1..=15).collect();
        let mut b: Vec<u64> = (20..35).collect();
        let slot = spec.slot_of(0, 1);
        a[slot] = 0;
        b[slot] = 0;
        assert!(matches!(
            LinePath::from_members(spec, field, 0, &a, &b),
            Err(DegSeqError::DegenerateLine(_))
        ));
    }
}
