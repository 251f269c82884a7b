//! Sparse multivariate polynomials with integer coefficients.
//!
//! Only what the symbolic lift checks need: ring operations, exact division,
//! degree queries and specialization to a univariate polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use super::rational::RationalField;
use super::ring::{ExactDiv, Ring};
use super::unipoly::UniPoly;

pub type Exponents = Vec<u16>;

/// Polynomial in a fixed number of variables; terms keyed by exponent
/// vectors in lexicographic order, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(nvars, BigInt::one(), &unit(nvars, index))
    }

    pub fn monomial(nvars: usize, c: BigInt, exps: &[u16]) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| u32::from(x)).sum()).max()
    }

    /// True if every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| u32::from(x)).sum::<u32>() == d)
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// True if the variable occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// True if `x_var` divides the polynomial (false for zero).
    pub fn divisible_by_var(&self, var: usize) -> bool {
        !self.is_zero() && self.terms.keys().all(|e| e[var] > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                add_term(&mut terms, e, ca * cb);
            }
        }
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, BigInt::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient by lexicographic leading-term division; `None` if the
    /// divisor does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let shift: Option<Exponents> = e.iter().zip(lead_e).map(|(a, b)| a.checked_sub(*b)).collect();
            let shift = shift?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let term = MPoly::monomial(self.nvars, qc.clone(), &shift);
            rem = rem.sub(&term.mul(divisor));
            add_term(&mut quot, shift, qc);
        }
        Some(MPoly {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Substitutes `values[k]` for every variable except `keep`, giving a
    /// univariate polynomial in `x_keep` over the rationals.
    pub fn specialize_except(&self, keep: usize, values: &[BigInt]) -> UniPoly<Rational> {
        assert_eq!(values.len(), self.nvars);
        let deg = self.degree_in(keep).unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if k != keep && x > 0 {
                    v *= num_traits::pow(values[k].clone(), x as usize);
                }
            }
            coeffs[e[keep] as usize] += v;
        }
        UniPoly::new(&RationalField, coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// Coefficient of the highest power of `x_var`, as a polynomial in the
    /// remaining variables (the `x_var` exponent is set to zero).
    pub fn leading_coeff_in(&self, var: usize) -> Self {
        let Some(d) = self.degree_in(var) else {
            return Self::zero(self.nvars);
        };
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == d {
                let mut e2 = e.clone();
                e2[var] = 0;
                add_term(&mut out.terms, e2, c.clone());
            }
        }
        out
    }

    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(c.clone(), |acc, (k, &x)| {
                    acc * num_traits::pow(values[k].clone(), x as usize)
                })
            })
            .sum()
    }
}

fn unit(nvars: usize, index: usize) -> Exponents {
    let mut e = vec![0; nvars];
    e[index] = 1;
    e
}

fn add_term(terms: &mut BTreeMap<Exponents, BigInt>, e: Exponents, c: BigInt) {
    use std::collections::btree_map::Entry;
    match terms.entry(e) {
        Entry::Vacant(slot) => {
            if !c.is_zero() {
                slot.insert(c);
            }
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// Ring context for [`MPoly`] in a fixed number of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MPolyRing {
    pub nvars: usize,
}

impl Ring for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::zero(self.nvars)
    }
    fn one(&self) -> MPoly {
        MPoly::constant(self.nvars, BigInt::one())
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero()
    }
    fn embed_i64(&self, n: i64) -> MPoly {
        MPoly::constant(self.nvars, BigInt::from(n))
    }
}

impl ExactDiv for MPolyRing {
    fn exact_div(&self, a: &MPoly, b: &MPoly) -> Option<MPoly> {
        a.exact_div(b)
    }
}
