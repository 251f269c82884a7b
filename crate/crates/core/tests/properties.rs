//! Property suites for the stated invariants of each module.

use invdeg_core::arith::rational::{int, random_rational};
use invdeg_core::arith::{det, PrimeField, Rational, RationalField, Ring, RingMatrix};
use invdeg_core::charts::{chart_param, k_series, Chart, ChartTag};
use invdeg_core::degseq::{iterate_once, random_line};
use invdeg_core::par::Exec;
use invdeg_core::picard::{char_poly_of, IntPolynomial};
use invdeg_core::seed::rng;
use invdeg_core::symspace::{
    homogeneity_check, k_eval, k_eval_matrix, khat, matrices_projectively_equal, matrix_inverse, projective_eq,
    random_sym_point, random_symmetric_of_rank, reciprocal, rho_conjugate, Space, SubspaceSpec, SymError, SymPoint,
};
use num_bigint::BigInt;
use proptest::prelude::*;

const P: u64 = 1_000_000_007;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_ring_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
        let f = RationalField;
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
    }

    #[test]
    fn prime_field_ring_axioms(a in 0..P, b in 0..P, c in 0..P) {
        let f = PrimeField::new(P);
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
    }
}

fn point(q: usize, seed: u64) -> SymPoint<Rational> {
    random_sym_point(q, &mut rng(seed), 10_000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lift_agrees_with_evaluation(q in 3usize..=5, seed in any::<u64>()) {
        let f = RationalField;
        let x = point(q, seed);
        let a = khat(&f, &x).unwrap();
        let b = k_eval(&f, &x).unwrap();
        prop_assert!(projective_eq(&f, a.coords(), b.coords()));
    }

    #[test]
    fn lift_has_degree_q2_minus_q_plus_1(q in 3usize..=5, seed in any::<u64>(), c in arb_rational()) {
        prop_assume!(c != int(0));
        let f = RationalField;
        let x = point(q, seed);
        let scaled = x.map(|v| v * &c);
        let lhs = khat(&f, &scaled).unwrap();
        let factor = f.pow(&c, (q * q - q + 1) as u64);
        let rhs = khat(&f, &x).unwrap().map(|v| v * &factor);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn image_is_symmetric(q in 3usize..=7, seed in any::<u64>()) {
        let x = point(q, seed);
        let m = k_eval_matrix(&RationalField, &x.to_matrix()).unwrap();
        prop_assert!(m.is_symmetric());
    }

    #[test]
    fn circulant_family_is_invariant(q in 3usize..=7, seed in any::<u64>()) {
        prop_assert!(SubspaceSpec::new(Space::Circulant, q).check_invariance(2, seed).unwrap());
        prop_assert!(SubspaceSpec::new(Space::SymCirculant, q).check_invariance(2, seed).unwrap());
    }

    #[test]
    fn permutation_equivariance(q in 3usize..=6, seed in any::<u64>()) {
        let f = RationalField;
        let x = point(q, seed);
        let kx = k_eval(&f, &x).unwrap();
        for l in 0..q {
            for m in l + 1..q {
                let lhs = k_eval(&f, &rho_conjugate(l, m, &x)).unwrap();
                prop_assert!(projective_eq(&f, lhs.coords(), rho_conjugate(l, m, &kx).coords()));
            }
        }
    }

    #[test]
    fn block_homogeneity(q in 3usize..=6, block in 1usize..=2, seed in any::<u64>(), t in arb_rational()) {
        prop_assume!(t != int(0));
        prop_assert!(homogeneity_check(&point(q, seed), &t, block).unwrap());
    }

    #[test]
    fn inverse_map_undoes_the_map(q in 3usize..=6, seed in any::<u64>()) {
        let f = RationalField;
        let x = point(q, seed);
        let back = k_eval(&f, &reciprocal(&f, &matrix_inverse(&f, &x).unwrap()).unwrap()).unwrap();
        prop_assert!(projective_eq(&f, back.coords(), x.coords()));
    }

    #[test]
    fn reciprocal_of_corank_one_is_singular(q in 3usize..=6, seed in any::<u64>()) {
        let f = RationalField;
        let w = random_symmetric_of_rank(q, q - 1, &mut rng(seed));
        prop_assume!(w.entries().iter().all(|v| *v != int(0)));
        let x = SymPoint::from_matrix(&w.map(|v| v.recip()));
        prop_assert_eq!(det(&f, &reciprocal(&f, &x).unwrap().to_matrix()), int(0));
        prop_assert_eq!(k_eval(&f, &x), Err(SymError::SingularJ));
    }

    #[test]
    fn line_iterates_keep_structure(seed in any::<u64>(), q in 3usize..=5) {
        for space in [Space::Sym, Space::Circulant, Space::SymCirculant] {
            let spec = SubspaceSpec::new(space, q);
            let Ok(line) = random_line(spec, P, seed) else { continue };
            let mut path = line;
            let mut prev = path.degree();
            for _ in 0..2 {
                let Ok(next) = iterate_once(&path, Exec::Sequential) else { break };
                let grid = next.grid();
                prop_assert!(spec.contains(&grid));
                if spec.is_symmetric() {
                    prop_assert!(grid.is_symmetric());
                }
                prop_assert!(next.degree() <= (q * q - q + 1) * prev);
                prev = next.degree();
                path = next;
            }
        }
    }

    #[test]
    fn charts_are_symmetric_and_scale_free(seed in any::<u64>(), k in 0usize..8, m in 1i64..4) {
        let tag = ChartTag::ALL[k];
        let p = Chart::new(tag, 5).unwrap().random_point(&mut rng(seed));
        let x = chart_param(&p).unwrap();
        prop_assert!(x.to_matrix().is_symmetric());
        if matches!(tag, ChartTag::A11 | ChartTag::B11_1 | ChartTag::C12) {
            let a = k_series(&x, 10).unwrap();
            let b = k_series(&x.map(|e| e.shift(m)), 10).unwrap();
            prop_assert_eq!(&a.valuations, &b.valuations);
            prop_assert_eq!(a.limit(), b.limit());
        }
    }

    #[test]
    fn charpoly_matches_determinant_oracle(vals in prop::collection::vec(-20i64..20, 25)) {
        let n = 5;
        let rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(vals[i * n + j])).collect()).collect();
        let cp = char_poly_of(&rows);
        let m = RingMatrix::from_fn(n, |i, j| int(vals[i * n + j]));
        prop_assert_eq!(cp, determinant_oracle(&m));
    }
}

/// `det(x I - M)` from its values at `x = 0..=n`, interpolated exactly.
fn determinant_oracle(m: &RingMatrix<Rational>) -> IntPolynomial {
    let f = RationalField;
    let n = m.size();
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|&x| {
            let a = RingMatrix::from_fn(n, |i, j| {
                if i == j {
                    int(x) - m.get(i, j)
                } else {
                    -m.get(i, j).clone()
                }
            });
            det(&f, &a)
        })
        .collect();
    let mut coeffs = vec![int(0); n + 1];
    for (k, yk) in ys.iter().enumerate() {
        // Lagrange basis polynomial for node k
        let mut basis = vec![int(1)];
        let mut denom = int(1);
        for (l, &xl) in xs.iter().enumerate() {
            if l == k {
                continue;
            }
            let mut next = vec![int(0); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * int(xl);
            }
            basis = next;
            denom *= int(xs[k] - xl);
        }
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * yk / &denom;
        }
    }
    IntPolynomial::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

#[test]
fn spectral_model_frozen_q5() {
    let m = invdeg_core::picard::l1_matrix(5).unwrap();
    let rows: Vec<Vec<Rational>> = m.entries.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
    let oracle = determinant_oracle(&RingMatrix::from_rows(rows));
    assert_eq!(oracle, IntPolynomial::from_i64(&[1, -11, 35, -50, 35, -11, 1]));
    assert_eq!(invdeg_core::picard::char_poly(&m), oracle);
}

#[test]
fn model_sequence_matches_matrix_powers() {
    let m = invdeg_core::picard::l1_matrix(5).unwrap();
    let f = RationalField;
    let a = RingMatrix::from_rows(m.entries.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect());
    let a2 = invdeg_core::arith::matrix::mat_mul(&f, &a, &a);
    let a3 = invdeg_core::arith::matrix::mat_mul(&f, &a2, &a);
    let seq = invdeg_core::picard::model_sequence(5, 3).unwrap();
    let expect: Vec<BigInt> = [&a, &a2, &a3].iter().map(|p| p.get(0, 0).to_integer()).collect();
    assert_eq!(seq, expect);
    assert_eq!(seq, vec![BigInt::from(21), BigInt::from(206), BigInt::from(1531)]);
}

#[test]
fn random_rational_respects_bound() {
    let mut r = rng(9);
    for _ in 0..100 {
        let v = random_rational(&mut r, 10_000);
        assert!(v > int(0));
        assert!(v.numer() <= &BigInt::from(10_000) && v.denom() <= &BigInt::from(10_000));
    }
}

#[test]
fn projective_equality_ignores_scale() {
    let a = RingMatrix::from_fn(3, |i, j| int((i * 3 + j + 1) as i64));
    let b = a.map(|v| v * int(-7));
    assert!(matrices_projectively_equal(&a, &b));
}
