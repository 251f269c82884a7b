use serde::Serialize;

use super::sequence::DegreeSequence;
use crate::arith::rational::Rational;
use crate::picard::{quadratic_dominant_root, quadratic_factor, RootInterval};

/// The predicted growth rate: the largest root of
/// `x^2 - (q^2 - 4q + 2) x + 1`, which is exactly 1 for `q = 3, 4`.
pub fn delta_formula(q: usize) -> RootInterval {
    assert!(q >= 3, "q must be at least 3");
    if q < 5 {
        let one = Rational::from_integer(1.into());
        return RootInterval {
            poly: quadratic_factor(q),
            lo: one.clone(),
            hi: one,
        };
    }
    quadratic_dominant_root(q)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaEstimate {
    pub q: usize,
    /// `deg(K^(n+1)) / deg(K^n)` for consecutive measured `n >= 1`.
    pub ratios: Vec<f64>,
    /// `exp` of the least-squares slope of `ln deg(K^n)` against `n`.
    pub log_slope_rate: Option<f64>,
    pub reference: RootInterval,
    pub reference_value: f64,
    /// Last ratio relative to the reference, `(ratio - delta) / delta`.
    pub relative_gap: Option<f64>,
    pub insufficient: bool,
    pub exploratory: bool,
}

pub fn estimate_delta(seq: &DegreeSequence) -> DeltaEstimate {
    let pts: Vec<(f64, f64)> = seq.entries.iter().map(|e| (e.n as f64, e.degree as f64)).collect();
    let ratios: Vec<f64> = pts.windows(2).map(|w| w[1].1 / w[0].1).collect();
    let reference = delta_formula(seq.q);
    let reference_value = reference.midpoint_f64();
    let log_slope_rate = (pts.len() >= 2).then(|| {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1.ln()).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1.ln() - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        (sxy / sxx).exp()
    });
    let relative_gap = ratios.last().map(|r| (r - reference_value) / reference_value);
    DeltaEstimate {
        q: seq.q,
        insufficient: ratios.is_empty(),
        ratios,
        log_slope_rate,
        reference,
        reference_value,
        relative_gap,
        exploratory: true,
    }
}
