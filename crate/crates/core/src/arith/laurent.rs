//! Truncated Laurent series in one parameter over the rationals.
//!
//! A series is either exact (a Laurent polynomial) or known modulo `s^N` for
//! an absolute precision `N`. Every arithmetic operation propagates `N`, so
//! each coefficient that is reported is exact; cancellation shows up as lost
//! precision rather than as wrong coefficients.

use num_traits::{One, Zero};

use super::rational::Rational;
use super::ring::{ExactDiv, Field, Ring};
use super::ArithError;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
    precision: Option<i64>,
}

impl LaurentSeries {
    /// Exact Laurent polynomial `s^valuation * sum coeffs[i] s^i`.
    pub fn exact(valuation: i64, coeffs: Vec<Rational>) -> Self {
        let mut s = LaurentSeries {
            valuation,
            coeffs,
            precision: None,
        };
        s.normalize();
        s
    }

    /// Series known modulo `s^precision`. Coefficients past the precision are
    /// dropped; missing ones are taken as zero.
    pub fn truncated(valuation: i64, mut coeffs: Vec<Rational>, precision: i64) -> Self {
        let len = (precision - valuation).max(0) as usize;
        coeffs.resize(len, Rational::zero());
        let mut s = LaurentSeries {
            valuation: valuation.min(precision),
            coeffs,
            precision: Some(precision),
        };
        s.normalize();
        s
    }

    pub fn constant(c: Rational) -> Self {
        Self::exact(0, vec![c])
    }

    /// `c * s^e`
    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::exact(e, vec![c])
    }

    pub fn zero() -> Self {
        Self::exact(0, Vec::new())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
                if self.precision.is_none() {
                    while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                        self.coeffs.pop();
                    }
                }
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.precision.unwrap_or(0);
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Absolute precision `N` (the series is known mod `s^N`); `None` if exact.
    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    /// True for the exact zero and for series that vanish to their precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the leading nonzero term, if one is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    /// Lower bound on the valuation: exact for nonzero series, the absolute
    /// precision for series that vanish to precision, `None` for exact zero.
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.precision
        } else {
            Some(self.valuation)
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Number of known coefficients starting at the valuation.
    pub fn relative_precision(&self) -> Option<usize> {
        self.precision.map(|_| self.coeffs.len())
    }

    /// Coefficient of `s^order`; `None` if it lies beyond the precision.
    pub fn coeff(&self, order: i64) -> Option<Rational> {
        if let Some(n) = self.precision {
            if order >= n {
                return None;
            }
        }
        if order < self.valuation {
            return Some(Rational::zero());
        }
        Some(
            self.coeffs
                .get((order - self.valuation) as usize)
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Multiplies by `s^m`.
    pub fn shift(&self, m: i64) -> Self {
        LaurentSeries {
            valuation: self.valuation + m,
            coeffs: self.coeffs.clone(),
            precision: self.precision.map(|n| n + m),
        }
    }

    /// Value at `s = 0`; `None` if the series has a pole or is not known at
    /// order zero.
    pub fn constant_term(&self) -> Option<Rational> {
        if !self.coeffs.is_empty() && self.valuation < 0 {
            return None;
        }
        self.coeff(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = match (self.precision, other.precision) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let lo = [self, other]
            .iter()
            .filter(|x| !x.coeffs.is_empty())
            .map(|x| x.valuation)
            .min();
        let Some(lo) = lo else {
            return match precision {
                None => Self::zero(),
                Some(n) => Self::truncated(n, Vec::new(), n),
            };
        };
        let hi = match precision {
            Some(n) => n,
            None => [self, other]
                .iter()
                .map(|x| x.valuation + x.coeffs.len() as i64)
                .max()
                .unwrap(),
        };
        if lo >= hi {
            return Self::truncated(hi, Vec::new(), hi);
        }
        let coeffs = (lo..hi)
            .map(|o| self.coeff_unchecked(o) + other.coeff_unchecked(o))
            .collect();
        let mut s = LaurentSeries {
            valuation: lo,
            coeffs,
            precision,
        };
        s.normalize();
        s
    }

    fn coeff_unchecked(&self, order: i64) -> Rational {
        if order < self.valuation {
            return Rational::zero();
        }
        self.coeffs
            .get((order - self.valuation) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return match self.precision {
                None => Self::zero(),
                Some(n) => Self::truncated(n, Vec::new(), n),
            };
        }
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // exact zero annihilates everything
        if (self.is_exact() && self.is_zero()) || (other.is_exact() && other.is_zero()) {
            return Self::zero();
        }
        let va = self.valuation;
        let vb = other.valuation;
        let precision = match (self.precision, other.precision) {
            (None, None) => None,
            (Some(na), None) => Some(na + vb),
            (None, Some(nb)) => Some(nb + va),
            (Some(na), Some(nb)) => Some((na + vb).min(nb + va)),
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            let n = precision.expect("inexact zero operand");
            return Self::truncated(n, Vec::new(), n);
        }
        let full_len = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match precision {
            Some(n) => ((n - va - vb).max(0) as usize).min(full_len),
            None => full_len,
        };
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        let mut s = LaurentSeries {
            valuation: va + vb,
            coeffs,
            precision,
        };
        if let Some(n) = precision {
            s.coeffs.resize((n - s.valuation).max(0) as usize, Rational::zero());
        }
        s.normalize();
        s
    }

    /// Multiplicative inverse with `max_precision` known coefficients (fewer
    /// if the input itself carries fewer).
    pub fn invert(&self, max_precision: usize) -> Result<Self, ArithError> {
        let Some(a0) = self.coeffs.first() else {
            return Err(ArithError::ZeroSeries);
        };
        let len = match self.precision {
            None => max_precision,
            Some(_) => self.coeffs.len().min(max_precision),
        };
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        out.push(inv0.clone());
        for k in 1..len {
            let mut acc = Rational::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out.push(-acc * &inv0);
        }
        let v = -self.valuation;
        Ok(Self::truncated(v, out, v + len as i64))
    }
}

/// Invert a series to the given relative precision.
pub fn series_invert(a: &LaurentSeries, precision: usize) -> Result<LaurentSeries, ArithError> {
    a.invert(precision)
}

/// Context for Laurent series arithmetic; `precision` is the number of
/// coefficients kept when inverting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    pub precision: usize,
}

impl LaurentRing {
    pub fn new(precision: usize) -> Self {
        LaurentRing { precision }
    }
}

impl Ring for LaurentRing {
    type Elem = LaurentSeries;

    fn zero(&self) -> LaurentSeries {
        LaurentSeries::zero()
    }
    fn one(&self) -> LaurentSeries {
        LaurentSeries::constant(Rational::one())
    }
    fn add(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.add(b)
    }
    fn neg(&self, a: &LaurentSeries) -> LaurentSeries {
        a.neg()
    }
    fn mul(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.mul(b)
    }
    fn is_zero(&self, a: &LaurentSeries) -> bool {
        a.is_zero()
    }
    fn embed_i64(&self, n: i64) -> LaurentSeries {
        LaurentSeries::constant(Rational::from_integer(n.into()))
    }
}

impl Field for LaurentRing {
    fn inv(&self, a: &LaurentSeries) -> Option<LaurentSeries> {
        a.invert(self.precision).ok()
    }
}

impl ExactDiv for LaurentRing {
    fn exact_div(&self, a: &LaurentSeries, b: &LaurentSeries) -> Option<LaurentSeries> {
        self.div(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn invert_one() {
        let one = LaurentSeries::constant(int(1));
        let inv = series_invert(&one, 8).unwrap();
        assert_eq!(inv.valuation(), Some(0));
        assert_eq!(inv.coeff(0), Some(int(1)));
        assert!((1..8).all(|k| inv.coeff(k) == Some(int(0))));
        assert_eq!(inv.precision(), Some(8));
    }

    #[test]
    fn invert_geometric() {
        // 1/(s + s^2) = s^-1 - 1 + s - s^2 + ...
        let a = LaurentSeries::exact(1, vec![int(1), int(1)]);
        let inv = series_invert(&a, 6).unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        let expect = [1, -1, 1, -1, 1, -1];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(inv.coeff(k as i64 - 1), Some(int(*e)));
        }
        assert_eq!(inv.coeff(5), None);
        let prod = a.mul(&inv);
        assert_eq!(prod.valuation(), Some(0));
        assert_eq!(prod.coeff(0), Some(int(1)));
        assert!((1..prod.precision().unwrap()).all(|k| prod.coeff(k) == Some(int(0))));
    }

    #[test]
    fn invert_zero_fails() {
        let z = LaurentSeries::truncated(0, vec![int(0); 5], 5);
        assert!(z.is_zero());
        assert_eq!(series_invert(&z, 5), Err(ArithError::ZeroSeries));
        assert_eq!(series_invert(&LaurentSeries::zero(), 5), Err(ArithError::ZeroSeries));
    }

    #[test]
    fn cancellation_loses_precision_not_exactness() {
        // (1 + s)^{-1} - (1 - s + s^2) = -s^3 + s^4 - ...
        let a = LaurentSeries::exact(0, vec![int(1), int(1)]).invert(6).unwrap();
        let b = LaurentSeries::exact(0, vec![int(1), int(-1), int(1)]);
        let d = a.add(&b.neg());
        assert_eq!(d.valuation(), Some(3));
        assert_eq!(d.coeff(3), Some(int(-1)));
        assert_eq!(d.precision(), Some(6));
    }

    #[test]
    fn inexact_zero_times_series() {
        let z = LaurentSeries::truncated(4, Vec::new(), 4);
        let x = LaurentSeries::exact(-2, vec![rat(3, 2)]);
        let p = z.mul(&x);
        assert!(p.is_zero());
        assert_eq!(p.valuation_lower_bound(), Some(2));
    }

    fn arb_series() -> impl Strategy<Value = LaurentSeries> {
        (-3i64..3, prop::collection::vec((-20i64..20, 1i64..9), 1..6)).prop_filter_map("nonzero leading", |(v, c)| {
            let coeffs: Vec<Rational> = c.iter().map(|&(n, d)| rat(n, d)).collect();
            (!coeffs[0].is_zero()).then(|| LaurentSeries::exact(v, coeffs))
        })
    }

    proptest! {
        #[test]
        fn double_inverse_is_identity(a in arb_series()) {
            let p = 10;
            let back = a.invert(p).unwrap().invert(p).unwrap();
            prop_assert_eq!(back.valuation(), a.valuation());
            for k in 0..p as i64 {
                let order = a.valuation().unwrap() + k;
                prop_assert_eq!(back.coeff(order), a.coeff(order));
            }
        }
    }
}
