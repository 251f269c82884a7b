//! Homogeneous forms in two variables over a prime field.
//!
//! A form of degree `d` is stored densely as `d + 1` coefficients, index `k`
//! holding the coefficient of `u^k v^(d-k)`. The zero form keeps a declared
//! degree so that tuples of forms stay homogeneous after cancellation.

use super::prime::{PrimeField, Residue};
use super::ring::Ring;
use super::unipoly::{uni_gcd, UniPoly};
use super::ArithError;

/// Below this many coefficients the multiplication is schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Residue>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<Residue>) -> Self {
        assert_eq!(
            coeffs.len(),
            degree + 1,
            "a degree-{degree} form has {} coefficients",
            degree + 1
        );
        BinaryForm { degree, coeffs }
    }

    pub fn zero_of_degree(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![0; degree + 1],
        }
    }

    /// `a*u + b*v`
    pub fn linear(a: Residue, b: Residue) -> Self {
        BinaryForm {
            degree: 1,
            coeffs: vec![b, a],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, field: &PrimeField, u: Residue, v: Residue) -> Residue {
        let mut vpows = vec![1; self.degree + 1];
        for k in 1..=self.degree {
            vpows[k] = field.mulm(vpows[k - 1], v);
        }
        let mut total = 0;
        let mut upow = 1;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let term = field.mulm(c, field.mulm(upow, vpows[self.degree - k]));
            total = field.addm(total, term);
            upow = field.mulm(upow, u);
        }
        total
    }

    /// Dehomogenization `f(u, 1)`.
    pub fn dehomogenize(&self, field: &PrimeField) -> UniPoly<Residue> {
        UniPoly::new(field, self.coeffs.clone())
    }

    /// Multiplicity of `v` as a factor; `None` for the zero form.
    pub fn v_multiplicity(&self) -> Option<usize> {
        let top = self.coeffs.iter().rposition(|&c| c != 0)?;
        Some(self.degree - top)
    }

    /// Multiplicity of `u` as a factor; `None` for the zero form.
    pub fn u_multiplicity(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    fn from_dehomogenized(poly: &UniPoly<Residue>, degree: usize) -> Self {
        let mut coeffs = poly.coeffs().to_vec();
        assert!(coeffs.len() <= degree + 1);
        coeffs.resize(degree + 1, 0);
        BinaryForm { degree, coeffs }
    }
}

/// Ring of binary forms over `F_p`. Addition requires equal degrees unless
/// one summand is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryForms {
    pub field: PrimeField,
}

impl BinaryForms {
    pub fn new(field: PrimeField) -> Self {
        BinaryForms { field }
    }
}

impl Ring for BinaryForms {
    type Elem = BinaryForm;

    fn zero(&self) -> BinaryForm {
        BinaryForm::zero_of_degree(0)
    }

    fn one(&self) -> BinaryForm {
        BinaryForm::new(0, vec![1])
    }

    fn add(&self, a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
        if a.is_zero() && a.degree != b.degree {
            return b.clone();
        }
        if b.is_zero() && a.degree != b.degree {
            return a.clone();
        }
        assert_eq!(a.degree, b.degree, "adding forms of different degree");
        let f = &self.field;
        BinaryForm {
            degree: a.degree,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| f.addm(x, y)).collect(),
        }
    }

    fn neg(&self, a: &BinaryForm) -> BinaryForm {
        BinaryForm {
            degree: a.degree,
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
        BinaryForm {
            degree: a.degree + b.degree,
            coeffs: poly_mul(&self.field, &a.coeffs, &b.coeffs),
        }
    }

    fn is_zero(&self, a: &BinaryForm) -> bool {
        a.is_zero()
    }
}

/// Product of dense coefficient vectors mod p.
pub fn poly_mul(field: &PrimeField, a: &[Residue], b: &[Residue]) -> Vec<Residue> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let n = short.len();
    let mut out = vec![0; a.len() + b.len() - 1];
    if n <= KARATSUBA_THRESHOLD {
        schoolbook_into(field, short, long, &mut out);
        return out;
    }
    // split the long operand into chunks of the short length
    for (ci, chunk) in long.chunks(n).enumerate() {
        let prod = if chunk.len() == n {
            karatsuba(field, short, chunk)
        } else {
            poly_mul(field, short, chunk)
        };
        let off = ci * n;
        for (k, c) in prod.into_iter().enumerate() {
            out[off + k] = field.addm(out[off + k], c);
        }
    }
    out
}

fn schoolbook_into(field: &PrimeField, a: &[Residue], b: &[Residue], out: &mut [Residue]) {
    let p = field.modulus() as u128;
    // Each product is < 2^126 for p < 2^63; reduce often enough to never
    // overflow the u128 accumulator.
    let batch = if field.modulus() < (1 << 61) { 32 } else { 2 };
    for (k, slot) in out.iter_mut().enumerate().take(a.len() + b.len() - 1) {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut acc: u128 = 0;
        let mut pending = 0;
        for i in lo..=hi {
            acc += a[i] as u128 * b[k - i] as u128;
            pending += 1;
            if pending == batch {
                acc %= p;
                pending = 0;
            }
        }
        *slot = (acc % p) as u64;
    }
}

fn karatsuba(field: &PrimeField, a: &[Residue], b: &[Residue]) -> Vec<Residue> {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    if n <= KARATSUBA_THRESHOLD {
        let mut out = vec![0; 2 * n - 1];
        schoolbook_into(field, a, b, &mut out);
        return out;
    }
    let m = n.div_ceil(2);
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(field, a0, b0);
    let z2 = poly_mul(field, a1, b1);
    let sum = |lo: &[Residue], hi: &[Residue]| -> Vec<Residue> {
        (0..m).map(|i| field.addm(lo[i], *hi.get(i).unwrap_or(&0))).collect()
    };
    let z1 = karatsuba(field, &sum(a0, a1), &sum(b0, b1));
    let mut out = vec![0; 2 * n - 1];
    for (i, &c) in z0.iter().enumerate() {
        out[i] = field.addm(out[i], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        out[i + 2 * m] = field.addm(out[i + 2 * m], c);
    }
    for i in 0..z1.len() {
        let mid = field.subm(field.subm(z1[i], *z0.get(i).unwrap_or(&0)), *z2.get(i).unwrap_or(&0));
        out[i + m] = field.addm(out[i + m], mid);
    }
    out
}

/// Splits a homogeneous tuple into its content (the gcd of all forms,
/// including shared powers of `u` and `v`) and the primitive tuple.
pub fn tuple_content_clear(
    ring: &BinaryForms,
    forms: &[BinaryForm],
) -> Result<(BinaryForm, Vec<BinaryForm>), ArithError> {
    let field = &ring.field;
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Err(ArithError::AllZero);
    };
    let degree = first.degree;
    if let Some(bad) = nonzero.iter().find(|f| f.degree != degree) {
        return Err(ArithError::DegreeMismatch {
            expected: degree,
            found: bad.degree,
        });
    }
    // Start from the lowest-degree dehomogenization: gcd work is bounded by it.
    let mut order: Vec<&BinaryForm> = nonzero.clone();
    order.sort_by_key(|f| degree - f.v_multiplicity().unwrap_or(0));
    let mut g = order[0].dehomogenize(field).monic(field);
    for f in order.iter().skip(1) {
        if g.degree() == Some(0) {
            break;
        }
        g = uni_gcd(field, &g, &f.dehomogenize(field));
    }
    let v_mult = nonzero.iter().filter_map(|f| f.v_multiplicity()).min().unwrap_or(0);
    let content_degree = g.degree().unwrap_or(0) + v_mult;
    let content = BinaryForm::from_dehomogenized(&g, content_degree);
    let reduced_degree = degree - content_degree;
    let reduced = forms
        .iter()
        .map(|f| {
            if f.is_zero() {
                return Ok(BinaryForm::zero_of_degree(reduced_degree));
            }
            let h = f
                .dehomogenize(field)
                .exact_div(field, &g)
                .ok_or(ArithError::ExactDivisionFailure)?;
            Ok(BinaryForm::from_dehomogenized(&h, reduced_degree))
        })
        .collect::<Result<Vec<_>, ArithError>>()?;
    Ok((content, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: u64 = 1_000_000_007;

    fn ring() -> BinaryForms {
        BinaryForms::new(PrimeField::new(P))
    }

    fn naive(field: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = field.addm(out[i + j], field.mulm(x, y));
            }
        }
        out
    }

    #[test]
    fn karatsuba_matches_naive_on_large_inputs() {
        use rand::{Rng, SeedableRng};
        let f = PrimeField::new((1 << 61) - 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for (la, lb) in [(600, 600), (1300, 700), (513, 2000), (1, 900)] {
            let a: Vec<u64> = (0..la).map(|_| rng.gen_range(0..f.modulus())).collect();
            let b: Vec<u64> = (0..lb).map(|_| rng.gen_range(0..f.modulus())).collect();
            assert_eq!(poly_mul(&f, &a, &b), naive(&f, &a, &b));
        }
    }

    #[test]
    fn content_of_monomial_pair() {
        let r = ring();
        // u^2 v and u v^2 -> content uv, reduced (u, v)
        let a = BinaryForm::new(3, vec![0, 0, 1, 0]);
        let b = BinaryForm::new(3, vec![0, 1, 0, 0]);
        let (c, red) = tuple_content_clear(&r, &[a, b]).unwrap();
        assert_eq!(c, BinaryForm::new(2, vec![0, 1, 0]));
        assert_eq!(red, vec![BinaryForm::linear(1, 0), BinaryForm::linear(0, 1)]);
    }

    #[test]
    fn content_of_constructed_tuple() {
        let r = ring();
        let f = BinaryForm::new(2, vec![3, 1, 4]);
        let g = BinaryForm::linear(1, 5);
        let h = BinaryForm::linear(2, 7);
        let (c, red) = tuple_content_clear(&r, &[r.mul(&f, &g), r.mul(&f, &h)]).unwrap();
        // content is f up to a scalar
        let scale = r.field.mulm(f.coeffs()[2], r.field.invm(c.coeffs()[2]).unwrap());
        let scaled: Vec<u64> = c.coeffs().iter().map(|&x| r.field.mulm(x, scale)).collect();
        assert_eq!(scaled, f.coeffs());
        assert_eq!(red[0].degree(), 1);
        assert_eq!(red[1].degree(), 1);
    }

    #[test]
    fn all_zero_tuple_is_an_error() {
        let r = ring();
        let z = BinaryForm::zero_of_degree(3);
        assert_eq!(tuple_content_clear(&r, &[z.clone(), z]), Err(ArithError::AllZero));
    }

    #[test]
    fn eval_matches_definition() {
        let f = PrimeField::new(P);
        // 2u^2 + 3uv + 5v^2 at (u,v) = (7, 11)
        let form = BinaryForm::new(2, vec![5, 3, 2]);
        assert_eq!(form.eval(&f, 7, 11), (2 * 49 + 3 * 77 + 5 * 121) % P);
    }

    fn arb_form(d: usize) -> impl Strategy<Value = BinaryForm> {
        prop::collection::vec(0..P, d + 1).prop_map(move |c| BinaryForm::new(d, c))
    }

    proptest! {
        #[test]
        fn content_clear_recomposes(
            common in arb_form(3),
            parts in prop::collection::vec(arb_form(4), 2..5),
        ) {
            let r = ring();
            prop_assume!(!common.is_zero());
            prop_assume!(parts.iter().any(|p| !p.is_zero()));
            let tuple: Vec<BinaryForm> = parts.iter().map(|p| r.mul(&common, p)).collect();
            let (content, reduced) = tuple_content_clear(&r, &tuple).unwrap();
            // recomposition
            for (orig, red) in tuple.iter().zip(&reduced) {
                prop_assert_eq!(&r.mul(&content, red), orig);
            }
            // reduced tuple is primitive
            let (c2, _) = tuple_content_clear(&r, &reduced).unwrap();
            prop_assert_eq!(c2.degree(), 0);
            let d = reduced[0].degree();
            prop_assert!(reduced.iter().all(|f| f.degree() == d));
        }
    }
}
