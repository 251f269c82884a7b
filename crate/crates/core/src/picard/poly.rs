//! Dense integer polynomials with exact real-root tools: Sturm sequences,
//! bisection on rational intervals and Graeffe root squaring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rational::Rational;

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolynomial {
    #[serde(serialize_with = "crate::serde_util::bigints")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(x - r)^k`
    pub fn power_of_linear(r: i64, k: usize) -> Self {
        let base = Self::from_i64(&[-r, 1]);
        (0..k).fold(Self::from_i64(&[1]), |acc, _| acc.mul(&base))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic polynomial; `None` if the divisor is not monic.
    pub fn div_rem_monic(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        if !divisor.leading()?.is_one() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::new(Vec::new()), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`
    fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Graeffe step: the polynomial whose roots are the squares of the roots.
    pub fn graeffe(&self) -> Self {
        let n = self.degree().unwrap_or(0);
        let prod = self.mul(&self.reflect());
        // prod(x) = g(x^2) up to sign (-1)^n
        let g: Vec<BigInt> = prod.coeffs.iter().step_by(2).cloned().collect();
        let g = Self::new(g);
        if n % 2 == 1 {
            g.neg()
        } else {
            g
        }
    }

    /// True if every root `r` satisfies `|r| <= bound`, decided with the
    /// Fujiwara bound `2 max |a_(n-k) / a_n|^(1/k)` (last term halved)
    /// compared exactly against `bound`. `false` means inconclusive.
    pub fn fujiwara_within(&self, bound: &Rational) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return true;
        }
        let lead = Rational::from_integer(self.coeffs[n].abs());
        let half = bound / Rational::from_integer(2.into());
        (1..=n).all(|k| {
            let mut a = Rational::from_integer(self.coeffs[n - k].abs()) / &lead;
            if k == n {
                a /= Rational::from_integer(2.into());
            }
            a <= num_traits::pow(half.clone(), k)
        })
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Negated pseudo-remainder of `self` by `other`, with content removed.
    /// The positive scaling keeps sign information intact.
    fn sturm_step(&self, other: &Self) -> Self {
        let lc = other.leading().expect("nonzero").clone();
        let dd = other.degree().unwrap();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd || rem.is_zero() {
                break;
            }
            // multiply by |lc| to stay in the integers without flipping signs
            let c = rem.leading().unwrap().clone();
            let scaled = Self::new(rem.coeffs.iter().map(|x| x * lc.abs()).collect());
            let mut shift = vec![BigInt::zero(); dr - dd];
            shift.extend(other.coeffs.iter().map(|x| x * &c * lc.signum()));
            rem = scaled.add(&Self::new(shift).neg());
        }
        rem.neg().primitive()
    }

    /// Sturm sequence of a polynomial with nonzero derivative.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.primitive(), self.derivative().primitive()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() || seq[n - 1].degree() == Some(0) {
                break;
            }
            let next = seq[n - 2].sturm_step(&seq[n - 1]);
            if next.is_zero() {
                break;
            }
            seq.push(next);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots(&self, a: &Rational, b: &Rational) -> usize {
        let seq = self.sturm_sequence();
        let va = sign_changes(&seq, a);
        let vb = sign_changes(&seq, b);
        va.saturating_sub(vb)
    }

    /// Bound `1 + max |a_k / a_n|` on the moduli of all roots.
    pub fn cauchy_bound(&self) -> Rational {
        let n = self.degree().unwrap_or(0);
        let lead = Rational::from_integer(self.coeffs[n].abs());
        let m = self.coeffs[..n]
            .iter()
            .map(|c| Rational::from_integer(c.abs()) / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }
}

fn sign_changes(seq: &[IntPolynomial], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval_rational(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A real algebraic number given by a polynomial and an isolating interval
/// `[lo, hi]` (degenerate when the number is rational and known exactly).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootInterval {
    pub poly: IntPolynomial,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        crate::arith::rational::to_f64(&mid)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Shrinks `[lo, hi]`, which must bracket a sign change of `p`, by
/// bisection until its width is at most `width`.
pub fn bisect_root(p: &IntPolynomial, lo: Rational, hi: Rational, width: &Rational) -> RootInterval {
    let mut lo = lo;
    let mut hi = hi;
    let slo = p.eval_rational(&lo).is_positive();
    assert_ne!(
        slo,
        p.eval_rational(&hi).is_positive(),
        "interval must bracket a sign change"
    );
    let two = Rational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let v = p.eval_rational(&mid);
        if v.is_zero() {
            return RootInterval {
                poly: p.clone(),
                lo: mid.clone(),
                hi: mid,
            };
        }
        if v.is_positive() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootInterval {
        poly: p.clone(),
        lo,
        hi,
    }
}

/// Certifies that every root of `p` has modulus strictly below `bound` by
/// Graeffe squaring up to `max_steps` times and comparing the Fujiwara bound
/// of the squared-root polynomial with `bound^(2^k)`. Returns the number of
/// steps used, or `None` if inconclusive.
pub fn certify_moduli_below(p: &IntPolynomial, bound: &Rational, max_steps: usize) -> Option<usize> {
    let mut g = p.clone();
    let mut b = bound.clone();
    for k in 0..=max_steps {
        // strict: the roots are within a bound that is itself below `bound`
        let shrunk = &b * Rational::new(999.into(), 1000.into());
        if g.fujiwara_within(&shrunk) {
            return Some(k);
        }
        g = g.graeffe();
        b = &b * &b;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn graeffe_squares_roots() {
        // (x - 2)(x + 3) -> (x - 4)(x - 9)
        let p = IntPolynomial::from_i64(&[-6, 1, 1]);
        assert_eq!(p.graeffe(), IntPolynomial::from_i64(&[36, -13, 1]));
        // cubic with odd degree
        let c = IntPolynomial::from_i64(&[-6, 11, -6, 1]); // roots 1,2,3
        assert_eq!(c.graeffe(), IntPolynomial::from_i64(&[-36, 49, -14, 1]));
    }

    #[test]
    fn sturm_counts_real_roots() {
        let p = IntPolynomial::from_i64(&[-6, 11, -6, 1]);
        assert_eq!(p.count_real_roots(&int(0), &int(10)), 3);
        assert_eq!(p.count_real_roots(&rat(3, 2), &rat(5, 2)), 1);
        let q = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(q.count_real_roots(&int(-10), &int(10)), 0);
        let r = IntPolynomial::power_of_linear(1, 4);
        assert_eq!(r.count_real_roots(&int(0), &int(2)), 1);
    }

    #[test]
    fn bisection_reaches_width() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        let w = rat(1, 1_000_000_000_000);
        let r = bisect_root(&p, int(1), int(2), &w);
        assert!(r.width() <= w);
        assert!((r.midpoint_f64() - std::f64::consts::SQRT_2).abs() < 1e-11);
    }

    #[test]
    fn certify_quartic_with_unit_roots() {
        let p = IntPolynomial::power_of_linear(1, 4);
        assert!(certify_moduli_below(&p, &rat(6854, 1000), 6).is_some());
        assert!(certify_moduli_below(&p, &rat(1, 2), 6).is_none());
    }

    #[test]
    fn display_is_readable() {
        let p = IntPolynomial::from_i64(&[1, -7, 1]);
        assert_eq!(p.to_string(), "x^2 - 7x + 1");
    }
}
