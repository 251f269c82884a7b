use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ChartError;
use crate::arith::rational::random_rational;
use crate::arith::{LaurentSeries, Rational, RingMatrix};
use crate::symspace::SymPoint;

/// Height bound for random chart parameters.
pub const PARAM_BOUND: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChartTag {
    R1,
    A12,
    A11,
    B11_1,
    B11_2,
    C12,
    D12_1,
    D12_2,
}

impl ChartTag {
    pub const ALL: [ChartTag; 8] = [
        ChartTag::R1,
        ChartTag::A12,
        ChartTag::A11,
        ChartTag::B11_1,
        ChartTag::B11_2,
        ChartTag::C12,
        ChartTag::D12_1,
        ChartTag::D12_2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChartTag::R1 => "R1",
            ChartTag::A12 => "A12",
            ChartTag::A11 => "A11",
            ChartTag::B11_1 => "B11_1",
            ChartTag::B11_2 => "B11_2",
            ChartTag::C12 => "C12",
            ChartTag::D12_1 => "D12_1",
            ChartTag::D12_2 => "D12_2",
        }
    }

    /// Rows (and columns) carried by the small parameters.
    fn special_rows(self) -> usize {
        match self {
            ChartTag::R1 | ChartTag::A11 | ChartTag::B11_1 | ChartTag::B11_2 => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for ChartTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChartTag {
    type Err = ChartError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ChartTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ChartError::InadmissibleParams(format!("unknown chart `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Chart {
    pub tag: ChartTag,
    pub q: usize,
}

impl Chart {
    pub const MIN_Q: usize = 3;

    pub fn new(tag: ChartTag, q: usize) -> Result<Self, ChartError> {
        if q < Self::MIN_Q {
            return Err(ChartError::UnsupportedQ { q, min: Self::MIN_Q });
        }
        Ok(Chart { tag, q })
    }

    /// Positions of the data matrix pinned to 1: the first small parameter
    /// in lexicographic order and the first entry of the lower block.
    pub fn normalized_positions(&self) -> Vec<(usize, usize)> {
        let b = self.tag.special_rows();
        let first_small = match self.tag {
            ChartTag::R1 => None,
            ChartTag::A12 | ChartTag::A11 => Some((0, 0)),
            ChartTag::B11_1 | ChartTag::B11_2 | ChartTag::C12 => Some((0, 1)),
            ChartTag::D12_1 | ChartTag::D12_2 => Some((0, 2)),
        };
        let mut out: Vec<(usize, usize)> = first_small.into_iter().collect();
        if self.tag == ChartTag::D12_2 {
            out.push((0, 0));
        }
        out.push((b, b));
        out.sort_unstable();
        out
    }

    /// Data positions `(i, j)`, `i <= j`, that enter the parametrization.
    pub fn used_positions(&self) -> Vec<(usize, usize)> {
        let q = self.q;
        let skip_top = self.tag == ChartTag::R1;
        (0..q)
            .flat_map(|i| (i..q).map(move |j| (i, j)))
            .filter(|&(i, _)| !(skip_top && i == 0))
            .collect()
    }

    /// A random admissible point with positive rational parameters.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> ChartPoint {
        let q = self.q;
        let mut data = RingMatrix::from_fn(q, |_, _| Rational::zero());
        for (i, j) in self.used_positions() {
            let v = random_rational(rng, PARAM_BOUND);
            data.set(i, j, v.clone());
            data.set(j, i, v);
        }
        for (i, j) in self.normalized_positions() {
            data.set(i, j, Rational::one());
            data.set(j, i, Rational::one());
        }
        let nu = (self.tag == ChartTag::R1).then(|| {
            (0..q)
                .map(|k| {
                    if k == 0 {
                        Rational::one()
                    } else {
                        random_rational(rng, PARAM_BOUND)
                    }
                })
                .collect()
        });
        let lambda = (self.tag == ChartTag::D12_2).then(|| random_rational(rng, PARAM_BOUND));
        ChartPoint {
            chart: *self,
            data,
            nu,
            lambda,
        }
    }
}

/// Parameters of a chart. The symmetric `data` matrix carries every
/// parameter in the position it scales: `xi` on the diagonal of the special
/// rows, `zeta` off it, `v` in the lower block. `nu` is used by `R1` only
/// and `lambda` by `D12_2` only.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub data: RingMatrix<Rational>,
    pub nu: Option<Vec<Rational>>,
    pub lambda: Option<Rational>,
}

impl ChartPoint {
    fn check(&self) -> Result<(), ChartError> {
        let q = self.chart.q;
        let bad = |msg: String| Err(ChartError::InadmissibleParams(msg));
        if self.data.size() != q || !self.data.is_symmetric() {
            return bad("data must be a symmetric q x q matrix".into());
        }
        for (i, j) in self.chart.used_positions() {
            if self.data.get(i, j).is_zero() {
                return bad(format!("parameter at ({i}, {j}) is zero"));
            }
        }
        for (i, j) in self.chart.normalized_positions() {
            if !self.data.get(i, j).is_one() {
                return bad(format!("normalized parameter at ({i}, {j}) must be 1"));
            }
        }
        match (&self.nu, self.chart.tag) {
            (Some(nu), ChartTag::R1) => {
                if nu.len() != q || !nu[0].is_one() || nu.iter().any(Zero::is_zero) {
                    return bad("nu needs q nonzero entries with nu_1 = 1".into());
                }
            }
            (None, ChartTag::R1) => return bad("R1 needs nu".into()),
            _ => {}
        }
        if self.chart.tag == ChartTag::D12_2 && self.lambda.as_ref().is_none_or(Zero::is_zero) {
            return bad("D12_2 needs a nonzero lambda".into());
        }
        Ok(())
    }

    /// Entry `(i, j)` of the parametrization as `(coefficient, power of s)`
    /// terms.
    fn entry_terms(&self, i: usize, j: usize) -> Vec<(Rational, i64)> {
        let (i, j) = (i.min(j), i.max(j));
        let d = self.data.get(i, j).clone();
        let b = self.chart.tag.special_rows();
        let diag_small = i == j && i < b;
        match self.chart.tag {
            ChartTag::R1 => {
                let nu = self.nu.as_ref().expect("checked");
                let mut t = vec![(&nu[i] * &nu[j], 0)];
                if i > 0 {
                    t.push((d, 1));
                }
                t
            }
            ChartTag::A12 | ChartTag::A11 => {
                if i < b {
                    vec![(d, 1)]
                } else {
                    vec![(d, 0)]
                }
            }
            ChartTag::B11_1 | ChartTag::C12 => {
                if diag_small {
                    vec![(d, 2)]
                } else if i < b {
                    vec![(d, 1)]
                } else {
                    vec![(d, 0)]
                }
            }
            ChartTag::B11_2 => {
                let xi = self.data.get(0, 0).clone();
                if diag_small {
                    vec![(d, 2)]
                } else if i == 0 {
                    vec![(xi * d, 1)]
                } else {
                    vec![(d, 0)]
                }
            }
            ChartTag::D12_1 => {
                if j < b {
                    vec![(d, 2)]
                } else if i < b {
                    vec![(d, 1)]
                } else {
                    vec![(d, 0)]
                }
            }
            ChartTag::D12_2 => {
                let l = self.lambda.clone().expect("checked");
                if i == j && i < b {
                    vec![(&l * &l * d, 2)]
                } else if j < b {
                    vec![(l * d, 2)]
                } else if i < b {
                    vec![(l * d, 1)]
                } else {
                    vec![(d, 0)]
                }
            }
        }
    }

    /// The full matrix of the parametrization at `s = value`.
    pub fn eval_at(&self, value: &Rational) -> Result<RingMatrix<Rational>, ChartError> {
        self.check()?;
        Ok(RingMatrix::from_fn(self.chart.q, |i, j| {
            self.entry_terms(i, j)
                .into_iter()
                .fold(Rational::zero(), |acc, (c, e)| {
                    acc + c * num_traits::pow(value.clone(), e as usize)
                })
        }))
    }
}

/// The parametrization of a chart as a matrix of exact Laurent polynomials
/// in the chart parameter.
pub fn chart_param(p: &ChartPoint) -> Result<SymPoint<LaurentSeries>, ChartError> {
    p.check()?;
    let m = RingMatrix::from_fn(p.chart.q, |i, j| {
        p.entry_terms(i, j)
            .into_iter()
            .fold(LaurentSeries::zero(), |acc, (c, e)| {
                acc.add(&LaurentSeries::monomial(c, e))
            })
    });
    Ok(SymPoint::from_matrix(&m))
}
