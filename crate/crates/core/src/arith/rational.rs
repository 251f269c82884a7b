use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::ring::{ExactDiv, Field, Ring};

/// Exact rational number. `num_rational` keeps every value in lowest terms
/// with a positive denominator, so normalization is eager.
pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn embed_i64(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Field for RationalField {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

impl ExactDiv for RationalField {
    fn exact_div(&self, a: &Rational, b: &Rational) -> Option<Rational> {
        self.div(a, b)
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Random nonzero rational with numerator and denominator in `[1, bound]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(1..=bound);
    let d = rng.gen_range(1..=bound);
    rat(n, d)
}

/// Scales a projective tuple to coprime integers whose first nonzero entry
/// is positive. Returns `None` for the all-zero tuple.
pub fn clear_to_coprime_integers(values: &[Rational]) -> Option<Vec<BigInt>> {
    let first = values.iter().position(|v| !v.is_zero())?;
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let sign_flip = ints[first].is_negative();
    for v in ints.iter_mut() {
        *v = &*v / &g;
        if sign_flip {
            *v = -&*v;
        }
    }
    Some(ints)
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clears_denominators_and_sign() {
        let v = vec![rat(-1, 2), rat(1, 3), int(0)];
        let out = clear_to_coprime_integers(&v).unwrap();
        assert_eq!(out, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
        assert!(clear_to_coprime_integers(&[int(0), int(0)]).is_none());
    }

    #[test]
    fn from_i64_matches_direct() {
        let f = RationalField;
        for n in [-7i64, 0, 1, 13] {
            assert_eq!(f.embed_i64(n), int(n));
        }
    }
}
