use num_traits::Zero;
use serde::Serialize;

use super::chart::{chart_param, Chart, ChartTag};
use super::ChartError;
use crate::arith::matrix::series_det_and_inverse;
use crate::arith::{LaurentSeries, Rational, RingMatrix};
use crate::symspace::SymPoint;

/// Relative precision per unit of `q` for the first attempt.
pub const BASE_PRECISION_PER_Q: usize = 2;
/// Precision doublings before giving up.
pub const MAX_DOUBLINGS: usize = 3;

/// The image of a series path, scaled so the lowest entry valuation is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesImage {
    pub valuations: Vec<Vec<i64>>,
    pub series: RingMatrix<LaurentSeries>,
    /// Relative precision that produced the image.
    pub precision: usize,
}

impl SeriesImage {
    pub fn size(&self) -> usize {
        self.series.size()
    }

    /// Value at the divisor.
    pub fn limit(&self) -> RingMatrix<Rational> {
        self.series.map(|e| e.coeff(0).expect("checked when built"))
    }

    /// Coefficient of entry `(i, j)` at `orders[i][j]`; `None` if some
    /// requested order is beyond the known precision.
    pub fn coefficients_at(&self, orders: &[Vec<i64>]) -> Option<RingMatrix<Rational>> {
        let n = self.size();
        let mut out = RingMatrix::from_fn(n, |_, _| Rational::zero());
        for (i, row) in orders.iter().enumerate().take(n) {
            for (j, &k) in row.iter().enumerate().take(n) {
                out.set(i, j, self.series.get(i, j).coeff(k)?);
            }
        }
        Some(out)
    }
}

fn reciprocal_series(x: &RingMatrix<LaurentSeries>, precision: usize) -> Result<RingMatrix<LaurentSeries>, ChartError> {
    let n = x.size();
    let mut out = Vec::with_capacity(n * n);
    for e in x.entries() {
        out.push(e.invert(precision)?);
    }
    Ok(RingMatrix::from_fn(n, |i, j| out[i * n + j].clone()))
}

fn image_at(x: &RingMatrix<LaurentSeries>, precision: usize) -> Result<Option<SeriesImage>, ChartError> {
    let j = reciprocal_series(x, precision)?;
    let (_, inv) = series_det_and_inverse(&j, precision)?;
    if inv.entries().iter().any(LaurentSeries::is_zero) {
        return Ok(None);
    }
    let shift = inv
        .entries()
        .iter()
        .filter_map(LaurentSeries::valuation)
        .min()
        .expect("nonzero");
    let series = inv.map(|e| e.shift(-shift));
    if series.entries().iter().any(|e| e.coeff(0).is_none()) {
        return Ok(None);
    }
    let n = series.size();
    let valuations = (0..n)
        .map(|i| (0..n).map(|j| series.get(i, j).valuation().expect("nonzero")).collect())
        .collect();
    Ok(Some(SeriesImage {
        valuations,
        series,
        precision,
    }))
}

/// The map along a path given by a builder that produces the path at a
/// requested relative precision. Precision doubles until every entry of
/// the image has a known leading term and a known value at the divisor.
pub fn k_series_with<F>(build: F, precision: usize) -> Result<SeriesImage, ChartError>
where
    F: Fn(usize) -> Result<RingMatrix<LaurentSeries>, ChartError>,
{
    let mut p = precision.max(1);
    for _ in 0..=MAX_DOUBLINGS {
        if let Some(img) = image_at(&build(p)?, p)? {
            return Ok(img);
        }
        p *= 2;
    }
    Err(ChartError::PrecisionExhausted(p / 2))
}

/// The map applied to a series path, scaled to lowest valuation 0.
pub fn k_series(x: &SymPoint<LaurentSeries>, precision: usize) -> Result<SeriesImage, ChartError> {
    let m = x.to_matrix();
    k_series_with(|_| Ok(m.clone()), precision)
}

/// Minimal vanishing orders of the homogeneous lift along the exceptional
/// divisors of the charts `R1, A11, B11_1, C12, D12_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingOrders {
    pub b: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub lambda: i64,
}

impl VanishingOrders {
    /// `(q-2, 2q-3, 2q-2, 4q-6, 4q-4)`
    pub fn closed_form(q: usize) -> Self {
        let q = q as i64;
        VanishingOrders {
            b: q - 2,
            alpha: 2 * q - 3,
            beta: 2 * q - 2,
            gamma: 4 * q - 6,
            lambda: 4 * q - 4,
        }
    }
}

pub const VANISHING_CHARTS: [ChartTag; 5] = [
    ChartTag::R1,
    ChartTag::A11,
    ChartTag::B11_1,
    ChartTag::C12,
    ChartTag::D12_1,
];

const MAX_RESAMPLES: usize = 20;

/// `ord Khat_ij = ord P + ord det J + ord (J^-1)_ij`, where `P` is the
/// product of all grid entries; returns the minimum over `i <= j`.
fn lift_order(x: &RingMatrix<LaurentSeries>, precision: usize) -> Result<i64, ChartError> {
    let ord_prod: i64 = x
        .entries()
        .iter()
        .map(|e| e.valuation().ok_or(ChartError::SingularSeries))
        .sum::<Result<i64, _>>()?;
    let mut p = precision;
    for _ in 0..=MAX_DOUBLINGS {
        let j = reciprocal_series(x, p)?;
        let (det, inv) = series_det_and_inverse(&j, p)?;
        let n = x.size();
        let known = det.valuation().is_some() && inv.entries().iter().all(|e| e.valuation().is_some());
        if known {
            let min_inv = (0..n)
                .flat_map(|i| (i..n).map(move |k| (i, k)))
                .map(|(i, k)| inv.get(i, k).valuation().unwrap())
                .min()
                .unwrap();
            return Ok(ord_prod + det.valuation().unwrap() + min_inv);
        }
        p *= 2;
    }
    Err(ChartError::PrecisionExhausted(p / 2))
}

pub fn vanishing_orders(q: usize, seed: u64) -> Result<VanishingOrders, ChartError> {
    vanishing_orders_at(q, seed, BASE_PRECISION_PER_Q * q)
}

/// [`vanishing_orders`] starting from an explicit series precision.
pub fn vanishing_orders_at(q: usize, seed: u64, precision: usize) -> Result<VanishingOrders, ChartError> {
    let mut orders = [0i64; 5];
    for (k, tag) in VANISHING_CHARTS.into_iter().enumerate() {
        let chart = Chart::new(tag, q)?;
        let mut rng = crate::seed::rng(crate::seed::split(seed, tag.name(), 0));
        let mut result = None;
        for _ in 0..MAX_RESAMPLES {
            let x = chart_param(&chart.random_point(&mut rng))?.to_matrix();
            match lift_order(&x, precision.max(1)) {
                Err(ChartError::SingularSeries) => continue,
                other => {
                    result = Some(other?);
                    break;
                }
            }
        }
        orders[k] = result.ok_or_else(|| ChartError::DegenerateSample(format!("no generic point on {tag}")))?;
    }
    let [b, alpha, beta, gamma, lambda] = orders;
    Ok(VanishingOrders {
        b,
        alpha,
        beta,
        gamma,
        lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::arith::RationalField;
    use crate::symspace::{k_eval_matrix, random_sym_point};

    #[test]
    fn constant_path_gives_the_plain_map() {
        let x = random_sym_point(4, &mut crate::seed::rng(3), 50);
        let path = x.map(|c| LaurentSeries::constant(c.clone()));
        let img = k_series(&path, 16).unwrap();
        assert!(img.valuations.iter().flatten().all(|&v| v == 0));
        let expected = k_eval_matrix(&RationalField, &x.to_matrix()).unwrap();
        assert!(crate::symspace::matrices_projectively_equal(&img.limit(), &expected));
    }

    #[test]
    fn scaling_the_path_changes_nothing() {
        let x = random_sym_point(4, &mut crate::seed::rng(4), 50);
        let mut path = x.map(|c| LaurentSeries::constant(c.clone()));
        let c = path.get(0, 0).clone();
        path = SymPoint::from_fn(4, |idx| {
            if idx.i == 0 && idx.j == 0 {
                c.mul(&LaurentSeries::monomial(int(1), 1))
            } else {
                path.get(idx.i, idx.j).clone()
            }
        });
        let a = k_series(&path, 16).unwrap();
        let scaled = path.map(|e| e.shift(3));
        let b = k_series(&scaled, 16).unwrap();
        assert_eq!(a.valuations, b.valuations);
        assert_eq!(a.limit(), b.limit());
    }

    #[test]
    fn diagonal_entry_path_pattern() {
        let q = 5;
        let x = random_sym_point(q, &mut crate::seed::rng(5), 100);
        let path = SymPoint::from_fn(q, |idx| {
            let c = x.get(idx.i, idx.j).clone();
            LaurentSeries::monomial(c, i64::from(idx.i == 0 && idx.j == 0))
        });
        let img = k_series(&path, 10).unwrap();
        for i in 0..q {
            for j in 0..q {
                assert_eq!(img.valuations[i][j], i64::from(i == 0 || j == 0), "({i}, {j})");
            }
        }
    }

    #[test]
    fn orders_match_closed_form_q5() {
        assert_eq!(vanishing_orders(5, 1).unwrap(), VanishingOrders::closed_form(5));
    }
}
