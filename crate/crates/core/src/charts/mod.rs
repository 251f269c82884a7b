//! Local charts of the blown-up space, the map evaluated along paths that
//! approach an exceptional divisor, and the checks built on the resulting
//! valuation patterns.

pub mod chart;
pub mod orbit;
pub mod series;

pub use chart::{chart_param, Chart, ChartPoint, ChartTag};
pub use orbit::{orbit_check, orbit_trial, OrbitClaim, OrbitReport, OrbitSummary, TrialSource};
pub use series::{k_series, vanishing_orders, vanishing_orders_at, SeriesImage, VanishingOrders, BASE_PRECISION_PER_Q};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("inadmissible chart parameters: {0}")]
    InadmissibleParams(String),
    #[error("the reciprocal matrix is singular over the series field")]
    SingularSeries,
    #[error("series precision exhausted at {0} coefficients")]
    PrecisionExhausted(usize),
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("charts need q >= {min}, got q = {q}")]
    UnsupportedQ { q: usize, min: usize },
}

impl From<ArithError> for ChartError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::SingularSeries | ArithError::ZeroSeries => ChartError::SingularSeries,
            other => ChartError::DegenerateSample(other.to_string()),
        }
    }
}
