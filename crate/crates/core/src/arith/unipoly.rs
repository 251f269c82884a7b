use super::ring::{Field, Ring};

/// Dense univariate polynomial, lowest degree first. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl<E: Clone + PartialEq> UniPoly<E> {
    pub fn new<F: Ring<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant<F: Ring<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x^k`.
    pub fn monomial<F: Ring<Elem = E>>(field: &F, k: usize) -> Self {
        let mut c = vec![field.zero(); k + 1];
        c[k] = field.one();
        UniPoly { coeffs: c }
    }

    pub fn add<F: Ring<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = field.zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = other.coeffs.get(i).unwrap_or(&z);
                field.add(a, b)
            })
            .collect();
        Self::new(field, c)
    }

    pub fn neg<F: Ring<Elem = E>>(&self, field: &F) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect(),
        }
    }

    pub fn sub<F: Ring<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale<F: Ring<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::new(field, self.coeffs.iter().map(|x| field.mul(x, c)).collect())
    }

    pub fn mul<F: Ring<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = field.add(&c[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, c)
    }

    pub fn eval<F: Ring<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn derivative<F: Ring<Elem = E>>(&self, field: &F) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(&field.embed_i64(i as i64), c))
            .collect();
        Self::new(field, c)
    }
}

impl<E: Clone + PartialEq> UniPoly<E> {
    /// Euclidean division; `None` if `divisor` is zero.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc_inv = field.inv(divisor.leading()?)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(&rem[k + dd], &lc_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = field.sub(&rem[k + j], &field.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(field, quot), Self::new(field, rem)))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(field, divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(field, &inv)
            }
        }
    }
}

/// Monic greatest common divisor over a field; `gcd(0, 0) = 0`.
pub fn uni_gcd<F: Field>(field: &F, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.div_rem(field, &y).expect("nonzero divisor");
        x = y;
        // keep the remainder monic so rational coefficients stay small
        y = r.monic(field);
    }
    x.monic(field)
}
