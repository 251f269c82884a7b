use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{bisect_root, certify_moduli_below, IntPolynomial, RootInterval};
use super::PicardError;
use crate::arith::rational::Rational;

/// Ordered basis of the six-dimensional slice.
pub const BASIS: [&str; 6] = ["H", "R1", "A", "B", "C", "D"];

/// Coordinates over the basis `(H, R1, A, B, C, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicVector(pub [BigInt; 6]);

impl PicVector {
    pub fn basis(k: usize) -> Self {
        let mut v: [BigInt; 6] = Default::default();
        v[k] = BigInt::one();
        PicVector(v)
    }

    pub fn from_i64(v: [i64; 6]) -> Self {
        PicVector(v.map(BigInt::from))
    }
}

/// The pullback matrix on the slice; column `k` is the image of basis
/// vector `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct L1Matrix {
    pub q: usize,
    pub entries: [[i64; 6]; 6],
}

impl L1Matrix {
    pub fn from_columns(q: usize, cols: [[i64; 6]; 6]) -> Self {
        let mut entries = [[0; 6]; 6];
        for (c, col) in cols.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                entries[r][c] = v;
            }
        }
        L1Matrix { q, entries }
    }

    pub fn column(&self, c: usize) -> [i64; 6] {
        std::array::from_fn(|r| self.entries[r][c])
    }

    pub fn apply(&self, v: &PicVector) -> PicVector {
        PicVector(std::array::from_fn(|r| {
            (0..6).fold(BigInt::zero(), |acc, c| {
                acc + BigInt::from(self.entries[r][c]) * &v.0[c]
            })
        }))
    }
}

pub const MIN_Q: usize = 5;

/// The pullback matrix for matrix size `q >= 5`.
pub fn l1_matrix(q: usize) -> Result<L1Matrix, PicardError> {
    if q < MIN_Q {
        return Err(PicardError::UnsupportedQ(q));
    }
    let q = q as i64;
    let h = [
        q * q - q + 1,
        -(q - 2),
        -(2 * q - 3),
        -(2 * q - 2),
        -(2 * q - 3),
        -(2 * q - 2),
    ];
    let r1 = [
        q * q - q,
        -(q - 1),
        -(2 * q - 3),
        -(2 * q - 2),
        -(2 * q - 3),
        -(2 * q - 2),
    ];
    let a = [q, 0, -1, -2, -2, -2];
    let b = [0, 0, 1, 1, 0, 0];
    let c = [q * q - q, 0, -(2 * q - 2), -(2 * q - 2), -(2 * q - 3), -(2 * q - 2)];
    let d = [0, 0, 0, 0, 1, 1];
    Ok(L1Matrix::from_columns(q as usize, [h, r1, a, b, c, d]))
}

/// Characteristic polynomial `det(x I - M)` of an integer matrix by
/// Berkowitz's division-free algorithm.
pub fn char_poly_of(rows: &[Vec<BigInt>]) -> IntPolynomial {
    let n = rows.len();
    // vector of coefficients, highest degree first
    let mut current: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        // leading principal submatrix of size k+1 split as [[A, R], [C, a]]
        let a = &rows[k][k];
        let r: Vec<BigInt> = (0..k).map(|j| rows[k][j].clone()).collect();
        let c: Vec<BigInt> = (0..k).map(|i| rows[i][k].clone()).collect();
        // Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        let mut col = vec![BigInt::one(), -a.clone()];
        let mut v = c.clone();
        for _ in 0..k {
            let rv: BigInt = r.iter().zip(&v).map(|(x, y)| x * y).sum();
            col.push(-rv);
            v = (0..k).map(|i| (0..k).map(|j| &rows[i][j] * &v[j]).sum()).collect();
        }
        // next = T * current, T lower-triangular Toeplitz of size (k+2) x (k+1)
        let next: Vec<BigInt> = (0..k + 2)
            .map(|i| {
                (0..=k.min(i))
                    .filter(|&j| i - j < col.len() && j < current.len())
                    .map(|j| &col[i - j] * &current[j])
                    .sum()
            })
            .collect();
        current = next;
    }
    current.reverse();
    IntPolynomial::new(current)
}

pub fn char_poly(m: &L1Matrix) -> IntPolynomial {
    let rows: Vec<Vec<BigInt>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    char_poly_of(&rows)
}

/// `x^2 - (q^2 - 4q + 2) x + 1`
pub fn quadratic_factor(q: usize) -> IntPolynomial {
    let q = q as i64;
    IntPolynomial::from_i64(&[1, -(q * q - 4 * q + 2), 1])
}

/// Isolation width for the dominant root.
pub fn isolation_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(12))
}

/// Largest root of the quadratic factor for `q >= 5`, isolated to width
/// at most `10^-12`.
pub fn quadratic_dominant_root(q: usize) -> RootInterval {
    let quad = quadratic_factor(q);
    let trace = (q * q - 4 * q + 2) as i64;
    // p(trace - 1) = 2 - trace < 0 and p(trace) = 1 > 0
    bisect_root(
        &quad,
        Rational::from_integer((trace - 1).into()),
        Rational::from_integer(trace.into()),
        &isolation_width(),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorReport {
    pub q: usize,
    pub char_poly: IntPolynomial,
    pub quadratic: IntPolynomial,
    pub quotient: Option<IntPolynomial>,
    pub divides: bool,
    pub dominant_match: bool,
    pub dominant_root: RootInterval,
    /// Real roots of the quotient with absolute value above the lower end
    /// of the dominant interval (Sturm count).
    pub quotient_real_roots_above: Option<usize>,
    /// Graeffe steps needed to bound the quotient's root moduli.
    pub graeffe_steps: Option<usize>,
}

const GRAEFFE_MAX_STEPS: usize = 8;

/// Divisibility of the characteristic polynomial by the quadratic factor and
/// exact certification that its dominant root modulus is the quadratic's
/// largest root.
pub fn check_factor(q: usize) -> Result<FactorReport, PicardError> {
    let m = l1_matrix(q)?;
    Ok(check_factor_of(&m))
}

/// [`check_factor`] for an arbitrary matrix labelled with `q`.
pub fn check_factor_of(m: &L1Matrix) -> FactorReport {
    let q = m.q;
    let cp = char_poly(m);
    let quad = quadratic_factor(q);
    let dominant = quadratic_dominant_root(q);
    let (qt, rem) = cp.div_rem_monic(&quad).expect("monic quadratic");
    let divides = rem.is_zero();
    let mut report = FactorReport {
        q,
        char_poly: cp,
        quadratic: quad,
        quotient: divides.then(|| qt.clone()),
        divides,
        dominant_match: false,
        dominant_root: dominant.clone(),
        quotient_real_roots_above: None,
        graeffe_steps: None,
    };
    if !divides {
        return report;
    }
    let lo = dominant.lo.clone();
    // the other root of the quadratic is 1/rho < 1 < lo
    let real_above = qt.count_real_roots(&lo, &qt.cauchy_bound())
        + qt.count_real_roots(
            &(-qt.cauchy_bound() - Rational::one()),
            &(-lo.clone() - isolation_width()),
        );
    let steps = certify_moduli_below(&qt, &lo, GRAEFFE_MAX_STEPS);
    report.quotient_real_roots_above = Some(real_above);
    report.graeffe_steps = steps;
    report.dominant_match = steps.is_some() && real_above == 0;
    report
}

/// H-coefficient of `L1^n (H)` for `n = 1..=n_max`.
pub fn model_sequence(q: usize, n_max: usize) -> Result<Vec<BigInt>, PicardError> {
    let m = l1_matrix(q)?;
    let mut v = PicVector::basis(0);
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        v = m.apply(&v);
        out.push(v.0[0].clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_at_small_q() {
        let m5 = l1_matrix(5).unwrap();
        assert_eq!(m5.column(0), [21, -3, -7, -8, -7, -8]);
        assert_eq!(m5.column(3), [0, 0, 1, 1, 0, 0]);
        let m6 = l1_matrix(6).unwrap();
        assert_eq!(m6.column(4), [30, 0, -10, -10, -9, -10]);
        assert_eq!(l1_matrix(4), Err(PicardError::UnsupportedQ(4)));
    }

    #[test]
    fn char_poly_trivial_cases() {
        let id = L1Matrix {
            q: 5,
            entries: std::array::from_fn(|i| std::array::from_fn(|j| i64::from(i == j))),
        };
        assert_eq!(char_poly(&id), IntPolynomial::power_of_linear(1, 6));
        let mut d = [[0i64; 6]; 6];
        d[0][0] = 2;
        d[1][1] = 3;
        let diag = L1Matrix { q: 5, entries: d };
        let expected = IntPolynomial::from_i64(&[0, 0, 0, 0, 6, -5, 1]);
        assert_eq!(char_poly(&diag), expected);
    }

    #[test]
    fn model_first_term() {
        for q in 5..=9 {
            assert_eq!(model_sequence(q, 1).unwrap()[0], BigInt::from(q * q - q + 1));
        }
    }

    #[test]
    fn perturbed_matrix_breaks_divisibility() {
        let mut m = l1_matrix(5).unwrap();
        m.entries[0][0] += 1;
        assert!(!check_factor_of(&m).divides);
    }
}
