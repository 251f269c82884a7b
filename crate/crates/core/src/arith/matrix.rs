use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::laurent::{LaurentRing, LaurentSeries};
use super::rational::Rational;
use super::ring::{Field, Ring};
use super::ArithError;
use crate::par::{self, Exec};

/// Square matrix over a ring context, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> RingMatrix<E> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RingMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RingMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.entries[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> RingMatrix<F> {
        RingMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Interchanges rows `l`, `m` and then columns `l`, `m`.
    pub fn swap_rows_cols(&self, l: usize, m: usize) -> Self {
        let perm = |k: usize| {
            if k == l {
                m
            } else if k == m {
                l
            } else {
                k
            }
        };
        Self::from_fn(self.n, |i, j| self.get(perm(i), perm(j)).clone())
    }
}

impl<E: Clone + PartialEq> RingMatrix<E> {
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> RingMatrix<R::Elem> {
    RingMatrix::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn mat_mul<R: Ring>(ring: &R, a: &RingMatrix<R::Elem>, b: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    let n = a.size();
    assert_eq!(n, b.size());
    RingMatrix::from_fn(n, |i, j| {
        (0..n).fold(ring.zero(), |acc, k| {
            ring.add(&acc, &ring.mul(a.get(i, k), b.get(k, j)))
        })
    })
}

pub fn scalar_mul<R: Ring>(ring: &R, c: &R::Elem, a: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

type MinorKey = (u32, u32);

/// Determinants of the minors needed for all cofactors, memoized by
/// `(row set, column set)` bitmasks. Expansion is always along the first row
/// of the row set, so the memo table stays small (`O(n^2 2^n)` entries).
struct MinorTable<'a, R: Ring> {
    ring: &'a R,
    m: &'a RingMatrix<R::Elem>,
    memo: HashMap<MinorKey, R::Elem>,
}

impl<'a, R: Ring> MinorTable<'a, R> {
    fn new(ring: &'a R, m: &'a RingMatrix<R::Elem>, targets: &[MinorKey], exec: Exec) -> Self {
        let mut table = MinorTable {
            ring,
            m,
            memo: HashMap::new(),
        };
        table.fill(targets, exec);
        table
    }

    fn children(key: MinorKey) -> impl Iterator<Item = MinorKey> {
        let (rows, cols) = key;
        let r = rows.trailing_zeros();
        let rest = rows & !(1 << r);
        (0..32u32)
            .filter(move |c| cols & (1 << c) != 0)
            .map(move |c| (rest, cols & !(1 << c)))
    }

    fn fill(&mut self, targets: &[MinorKey], exec: Exec) {
        // collect the needed keys grouped by size
        let max = targets.iter().map(|k| k.0.count_ones()).max().unwrap_or(0) as usize;
        let mut levels: Vec<Vec<MinorKey>> = vec![Vec::new(); max + 1];
        let mut seen: std::collections::HashSet<MinorKey> = std::collections::HashSet::new();
        let mut stack: Vec<MinorKey> = targets.to_vec();
        while let Some(k) = stack.pop() {
            if !seen.insert(k) {
                continue;
            }
            let size = k.0.count_ones() as usize;
            levels[size].push(k);
            if size > 1 {
                stack.extend(Self::children(k));
            }
        }
        for level in levels.iter_mut().skip(1) {
            level.sort_unstable();
            let memo = &self.memo;
            let ring = self.ring;
            let m = self.m;
            let computed = par::map(exec, level.clone(), |key| {
                let v = Self::expand(ring, m, memo, key);
                (key, v)
            });
            self.memo.extend(computed);
        }
    }

    fn expand(ring: &R, m: &RingMatrix<R::Elem>, memo: &HashMap<MinorKey, R::Elem>, key: MinorKey) -> R::Elem {
        let (rows, cols) = key;
        let r = rows.trailing_zeros() as usize;
        if rows.count_ones() == 1 {
            let c = cols.trailing_zeros() as usize;
            return m.get(r, c).clone();
        }
        let rest = rows & !(1 << r);
        let mut acc = ring.zero();
        let mut pos = 0;
        for c in 0..m.size() {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = m.get(r, c);
            if !ring.is_zero(entry) {
                let sub = &memo[&(rest, cols & !(1 << c))];
                let term = ring.mul(entry, sub);
                acc = if pos % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            pos += 1;
        }
        acc
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Determinant by memoized cofactor expansion (division-free).
pub fn det<R: Ring>(ring: &R, m: &RingMatrix<R::Elem>) -> R::Elem {
    let n = m.size();
    if n == 0 {
        return ring.one();
    }
    let key = (full_mask(n), full_mask(n));
    let table = MinorTable::new(ring, m, &[key], Exec::Sequential);
    table.memo[&key].clone()
}

/// Transposed cofactor matrix, so that `m * adj(m) = det(m) * I`.
pub fn adjugate<R: Ring>(ring: &R, m: &RingMatrix<R::Elem>) -> RingMatrix<R::Elem> {
    adjugate_with(ring, m, Exec::Sequential)
}

/// [`adjugate`] with the minor levels optionally computed in parallel.
pub fn adjugate_with<R: Ring>(ring: &R, m: &RingMatrix<R::Elem>, exec: Exec) -> RingMatrix<R::Elem> {
    let n = m.size();
    assert!(n <= 16, "cofactor expansion is limited to n <= 16");
    if n == 1 {
        return identity(ring, 1);
    }
    let all = full_mask(n);
    let symmetric = m.is_symmetric();
    let mut targets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if symmetric && j < i {
                continue;
            }
            targets.push((all & !(1 << i), all & !(1 << j)));
        }
    }
    let table = MinorTable::new(ring, m, &targets, exec);
    let cof = |i: usize, j: usize| {
        let minor = &table.memo[&(all & !(1 << i), all & !(1 << j))];
        if (i + j).is_multiple_of(2) {
            minor.clone()
        } else {
            ring.neg(minor)
        }
    };
    // adj[j][i] = cofactor(i, j)
    RingMatrix::from_fn(n, |r, c| if symmetric && r < c { cof(r, c) } else { cof(c, r) })
}

/// Selected adjugate entries `adj[r][c]`, computing only the minors they
/// need.
pub fn adjugate_entries<R: Ring>(
    ring: &R,
    m: &RingMatrix<R::Elem>,
    positions: &[(usize, usize)],
    exec: Exec,
) -> Vec<R::Elem> {
    let n = m.size();
    assert!(n <= 16, "cofactor expansion is limited to n <= 16");
    if n == 1 {
        return positions.iter().map(|_| ring.one()).collect();
    }
    let all = full_mask(n);
    let key = |r: usize, c: usize| (all & !(1 << c), all & !(1 << r));
    let targets: Vec<MinorKey> = positions.iter().map(|&(r, c)| key(r, c)).collect();
    let table = MinorTable::new(ring, m, &targets, exec);
    positions
        .iter()
        .map(|&(r, c)| {
            let minor = &table.memo[&key(r, c)];
            if (r + c) % 2 == 0 {
                minor.clone()
            } else {
                ring.neg(minor)
            }
        })
        .collect()
}

/// Inverse over a field by Gauss-Jordan elimination; `None` if singular.
pub fn invert_field<F: Field>(field: &F, m: &RingMatrix<F::Elem>) -> Option<RingMatrix<F::Elem>> {
    let n = m.size();
    let mut a = m.rows();
    let mut inv = identity(field, n).rows();
    for col in 0..n {
        let piv = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p_inv = field.inv(&a[col][col])?;
        for k in 0..n {
            a[col][k] = field.mul(&a[col][k], &p_inv);
            inv[col][k] = field.mul(&inv[col][k], &p_inv);
        }
        for r in 0..n {
            if r == col || field.is_zero(&a[r][col]) {
                continue;
            }
            let factor = a[r][col].clone();
            for k in 0..n {
                let t = field.mul(&factor, &a[col][k]);
                a[r][k] = field.sub(&a[r][k], &t);
                let t = field.mul(&factor, &inv[col][k]);
                inv[r][k] = field.sub(&inv[r][k], &t);
            }
        }
    }
    Some(RingMatrix::from_rows(inv))
}

/// Exact rank of a rational matrix by fraction-free (Bareiss) elimination on
/// the row-scaled integer matrix.
pub fn rank_rational(m: &RingMatrix<Rational>) -> usize {
    let n = m.size();
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::from(1), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
            row.iter()
                .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..n {
            for k in col + 1..n {
                let v = &a[rank][col] * &a[r][k] - &a[r][col] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

/// Inverse of a matrix of Laurent series; see [`series_det_and_inverse`].
pub fn series_mat_invert(
    m: &RingMatrix<LaurentSeries>,
    precision: usize,
) -> Result<RingMatrix<LaurentSeries>, ArithError> {
    series_det_and_inverse(m, precision).map(|(_, inv)| inv)
}

/// Determinant and inverse over the Laurent field by Gauss-Jordan
/// elimination with full pivoting on the lowest valuation. `precision` bounds
/// the number of coefficients kept when inverting pivots.
pub fn series_det_and_inverse(
    m: &RingMatrix<LaurentSeries>,
    precision: usize,
) -> Result<(LaurentSeries, RingMatrix<LaurentSeries>), ArithError> {
    let n = m.size();
    let ring = LaurentRing::new(precision);
    let mut a = m.rows();
    let mut inv = identity(&ring, n).rows();
    let mut det = ring.one();
    let mut col_swaps = Vec::with_capacity(n);
    for c in 0..n {
        let mut best: Option<(usize, usize, i64)> = None;
        for (r, row) in a.iter().enumerate().skip(c) {
            for (k, x) in row.iter().enumerate().skip(c) {
                if let Some(v) = x.valuation() {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((r, k, v));
                    }
                }
            }
        }
        let (r, k, _) = best.ok_or(ArithError::SingularSeries)?;
        if r != c {
            a.swap(r, c);
            inv.swap(r, c);
            det = det.neg();
        }
        if k != c {
            for row in a.iter_mut() {
                row.swap(k, c);
            }
            det = det.neg();
        }
        col_swaps.push(k);
        let pivot = a[c][c].clone();
        det = det.mul(&pivot);
        let p_inv = pivot.invert(precision)?;
        for k in 0..n {
            a[c][k] = a[c][k].mul(&p_inv);
            inv[c][k] = inv[c][k].mul(&p_inv);
        }
        for r in 0..n {
            if r == c || (a[r][c].is_zero() && a[r][c].is_exact()) {
                continue;
            }
            let factor = a[r][c].clone();
            for k in 0..n {
                let t = factor.mul(&a[c][k]);
                a[r][k] = a[r][k].add(&t.neg());
                let t = factor.mul(&inv[c][k]);
                inv[r][k] = inv[r][k].add(&t.neg());
            }
        }
    }
    // undo the column permutation: rows of the inverse move back
    for (c, &k) in col_swaps.iter().enumerate().rev() {
        if k != c {
            inv.swap(k, c);
        }
    }
    Ok((det, RingMatrix::from_rows(inv)))
}
