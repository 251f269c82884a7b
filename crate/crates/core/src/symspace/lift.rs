use num_bigint::BigInt;
use rand::Rng;

use super::point::{normalize_projective, projective_eq, slot_count, SymIndex, SymPoint};
use super::SymError;
use crate::arith::matrix::{adjugate, det, invert_field, rank_rational};
use crate::arith::mpoly::{MPoly, MPolyRing};
use crate::arith::rational::{Rational, RationalField};
use crate::arith::ring::{ExactDiv, Field, Ring};
use crate::arith::unipoly::uni_gcd;
use crate::arith::RingMatrix;

/// Products of all grid entries but one, for every position, without
/// division. Returns the cofactor-style matrix and the full product.
fn leave_one_out_products<R: Ring>(ring: &R, m: &RingMatrix<R::Elem>) -> (RingMatrix<R::Elem>, R::Elem) {
    let e = m.entries();
    let len = e.len();
    let mut prefix = Vec::with_capacity(len + 1);
    prefix.push(ring.one());
    for x in e {
        let next = ring.mul(prefix.last().unwrap(), x);
        prefix.push(next);
    }
    let mut suffix = vec![ring.one(); len + 1];
    for k in (0..len).rev() {
        suffix[k] = ring.mul(&e[k], &suffix[k + 1]);
    }
    let n = m.size();
    let q = RingMatrix::from_fn(n, |i, j| {
        let k = i * n + j;
        ring.mul(&prefix[k], &suffix[k + 1])
    });
    (q, prefix[len].clone())
}

/// Homogeneous lift on the full grid: `adj(Q) / P^(q-2)`, where `P` is the
/// product of all `q^2` entries and `Q_kl = P / x_kl`.
pub fn khat_matrix<R: ExactDiv>(ring: &R, m: &RingMatrix<R::Elem>) -> Result<RingMatrix<R::Elem>, SymError> {
    let q = m.size();
    let (qm, prod) = leave_one_out_products(ring, m);
    let adj = adjugate(ring, &qm);
    let denom = ring.pow(&prod, q as u64 - 2);
    let entries = adj
        .entries()
        .iter()
        .map(|a| ring.exact_div(a, &denom).ok_or(SymError::ExactDivisionFailure))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RingMatrix::from_fn(q, |i, j| entries[i * q + j].clone()))
}

/// The primitive homogeneous lift of the map at a symmetric point.
pub fn khat<R: ExactDiv>(ring: &R, x: &SymPoint<R::Elem>) -> Result<SymPoint<R::Elem>, SymError> {
    khat_matrix(ring, &x.to_matrix()).map(|m| SymPoint::from_matrix(&m))
}

/// Inverse of the entrywise reciprocal, on the full grid.
pub fn k_eval_matrix<F: Field>(field: &F, m: &RingMatrix<F::Elem>) -> Result<RingMatrix<F::Elem>, SymError> {
    let n = m.size();
    for i in 0..n {
        for j in 0..n {
            if field.is_zero(m.get(i, j)) {
                return Err(SymError::ZeroEntry { i, j });
            }
        }
    }
    let j = m.map(|x| field.inv(x).expect("nonzero"));
    invert_field(field, &j).ok_or(SymError::SingularJ)
}

/// The map at a point, scaled so the first nonzero coordinate is one.
pub fn k_eval<F: Field>(field: &F, x: &SymPoint<F::Elem>) -> Result<SymPoint<F::Elem>, SymError> {
    let y = SymPoint::from_matrix(&k_eval_matrix(field, &x.to_matrix())?);
    let coords = normalize_projective(field, y.coords()).ok_or(SymError::SingularJ)?;
    Ok(SymPoint::new(x.q(), coords))
}

/// Entrywise reciprocal; fails on a zero entry.
pub fn reciprocal<F: Field>(field: &F, x: &SymPoint<F::Elem>) -> Result<SymPoint<F::Elem>, SymError> {
    for ix in super::point::sym_indices(x.q()) {
        if field.is_zero(x.get(ix.i, ix.j)) {
            return Err(SymError::ZeroEntry { i: ix.i, j: ix.j });
        }
    }
    Ok(x.map(|c| field.inv(c).expect("nonzero")))
}

/// Matrix inverse of a symmetric point; fails if singular.
pub fn matrix_inverse<F: Field>(field: &F, x: &SymPoint<F::Elem>) -> Result<SymPoint<F::Elem>, SymError> {
    let inv = invert_field(field, &x.to_matrix()).ok_or(SymError::SingularJ)?;
    Ok(SymPoint::from_matrix(&inv))
}

/// Exact rank of a rational matrix.
pub fn rank_of(m: &RingMatrix<Rational>) -> usize {
    rank_rational(m)
}

/// Interchanges rows `l`, `m` and columns `l`, `m`.
pub fn rho_conjugate<E: Clone>(l: usize, m: usize, x: &SymPoint<E>) -> SymPoint<E> {
    SymPoint::from_matrix(&x.to_matrix().swap_rows_cols(l, m))
}

/// Compares the map on a block-scaled point with the block-scaled image:
/// the first `block` rows and columns are multiplied by `t`.
pub fn homogeneity_check(x: &SymPoint<Rational>, t: &Rational, block: usize) -> Result<bool, SymError> {
    let f = RationalField;
    let q = x.q();
    let scale = |m: &RingMatrix<Rational>, s: &Rational| {
        RingMatrix::from_fn(q, |i, j| {
            let mut v = m.get(i, j).clone();
            if i < block {
                v *= s;
            }
            if j < block {
                v *= s;
            }
            v
        })
    };
    let scaled = scale(&x.to_matrix(), t);
    let lhs = k_eval_matrix(&f, &scaled)?;
    let image = k_eval_matrix(&f, &x.to_matrix())?;
    // J(D x D) = D^-1 J(x) D^-1, hence K(D x D) = D K(x) D
    let rhs = scale(&image, t);
    Ok(projective_eq(&f, lhs.entries(), rhs.entries()))
}

/// Variable index of coordinate `y_ij` in the symbolic computations.
fn var_of(q: usize, i: usize, j: usize) -> usize {
    SymIndex::new(i, j).slot(q)
}

fn symbolic_point(q: usize) -> (MPolyRing, SymPoint<MPoly>) {
    let nv = slot_count(q);
    let ring = MPolyRing { nvars: nv };
    (ring, SymPoint::from_fn(q, |ix| MPoly::var(nv, ix.slot(q))))
}

/// All components `khat_ij`, `i <= j`, with independent indeterminate entries.
pub fn symbolic_khat(q: usize) -> Result<SymPoint<MPoly>, SymError> {
    let (ring, x) = symbolic_point(q);
    khat(&ring, &x)
}

const SYMBOLIC_MAX_Q: usize = 5;
const PRIMITIVITY_MAX_Q: usize = 4;
const SPECIALIZATION_ATTEMPTS: usize = 3;

/// Decides whether the components of the symbolic lift have a nonconstant
/// common factor.
///
/// For each variable `y`, all other variables are specialized to random
/// integers at which the leading coefficient in `y` of some component does
/// not vanish. A common factor of positive degree in `y` would survive this
/// specialization, so a constant univariate gcd for every variable proves the
/// multivariate gcd constant. Variables absent from some component are
/// skipped, since no common factor can involve them.
pub fn primitivity_check(q: usize) -> Result<bool, SymError> {
    if q > PRIMITIVITY_MAX_Q {
        return Err(SymError::ResourceBound {
            check: "primitivity",
            q,
            max: PRIMITIVITY_MAX_Q,
        });
    }
    if q < 3 {
        return Err(SymError::UnsupportedQ(q));
    }
    let comps = symbolic_khat(q)?;
    let comps = comps.coords();
    let nv = slot_count(q);
    let mut rng = crate::seed::rng(crate::seed::split(0x5eed, "primitivity", q as u64));
    let f = RationalField;
    for var in 0..nv {
        if comps.iter().any(|c| !c.involves(var)) {
            continue;
        }
        let mut proven = false;
        for _ in 0..SPECIALIZATION_ATTEMPTS {
            let point: Vec<BigInt> = (0..nv).map(|_| BigInt::from(rng.gen_range(1..=1000))).collect();
            let guard = comps.iter().any(|c| {
                let lc = c.leading_coeff_in(var);
                lc.eval(&point) != BigInt::from(0)
            });
            if !guard {
                continue;
            }
            let mut g = comps[0].specialize_except(var, &point);
            for c in &comps[1..] {
                if g.degree() == Some(0) {
                    break;
                }
                g = uni_gcd(&f, &g, &c.specialize_except(var, &point));
            }
            if g.degree() == Some(0) {
                proven = true;
                break;
            }
        }
        if !proven {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the splitting of the diagonal component `khat_ii = D_i * E_i`,
/// where `E_i` is the product of the grid entries in row and column `i`
/// (0-based): the quotient must be exact, free of the row-`i` variables and
/// not divisible by any coordinate.
pub fn factorization_check(q: usize, i: usize) -> Result<bool, SymError> {
    if q > SYMBOLIC_MAX_Q {
        return Err(SymError::ResourceBound {
            check: "factorization",
            q,
            max: SYMBOLIC_MAX_Q,
        });
    }
    if q < 3 {
        return Err(SymError::UnsupportedQ(q));
    }
    if i >= q {
        return Err(SymError::IndexOutOfRange { index: i, q });
    }
    let (ring, x) = symbolic_point(q);
    let m = x.to_matrix();
    let (qm, prod) = leave_one_out_products(&ring, &m);
    // khat_ii = C_ii(Q) / P^(q-2)
    let keep: Vec<usize> = (0..q).filter(|&k| k != i).collect();
    let minor = RingMatrix::from_fn(q - 1, |a, b| qm.get(keep[a], keep[b]).clone());
    let c_ii = det(&ring, &minor);
    let k_ii = ring
        .exact_div(&c_ii, &ring.pow(&prod, q as u64 - 2))
        .ok_or(SymError::ExactDivisionFailure)?;
    let nv = slot_count(q);
    let mut e_exps = vec![0u16; nv];
    for k in 0..q {
        e_exps[var_of(q, i, k)] += if k == i { 1 } else { 2 };
    }
    let e_i = MPoly::monomial(nv, BigInt::from(1), &e_exps);
    let Some(d_i) = k_ii.exact_div(&e_i) else {
        return Ok(false);
    };
    let row_free = (0..q).all(|k| !d_i.involves(var_of(q, i, k)));
    let no_var_factor = (0..nv).all(|v| !d_i.divisible_by_var(v));
    Ok(row_free && no_var_factor && !d_i.is_zero())
}
