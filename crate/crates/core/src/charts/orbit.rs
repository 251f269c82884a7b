use num_traits::{One, Zero};
use serde::Serialize;

use super::chart::{chart_param, Chart, ChartPoint, ChartTag};
use super::series::{k_series, k_series_with, SeriesImage, BASE_PRECISION_PER_Q};
use super::ChartError;
use crate::arith::matrix::{det, identity, mat_mul};
use crate::arith::rational::random_rational;
use crate::arith::{LaurentSeries, Rational, RationalField, RingMatrix};
use crate::par::{self, Exec};
use crate::seed::{rng, split};
use crate::symspace::{k_eval_matrix, matrices_projectively_equal, random_symmetric_of_rank, rank_of, SymPoint};

const MAX_RESAMPLES: usize = 20;
const PATH_BOUND: i64 = 10_000;
pub const LABEL: &str = "first-order consistent";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitClaim {
    R1,
    Jr,
    Sigma11,
    Sigma12,
    A11,
    Sigma12C,
    C12,
    D12,
}

impl OrbitClaim {
    pub const ALL: [OrbitClaim; 8] = [
        OrbitClaim::R1,
        OrbitClaim::Jr,
        OrbitClaim::Sigma11,
        OrbitClaim::Sigma12,
        OrbitClaim::A11,
        OrbitClaim::Sigma12C,
        OrbitClaim::C12,
        OrbitClaim::D12,
    ];

    pub fn id(self) -> &'static str {
        match self {
            OrbitClaim::R1 => "r1",
            OrbitClaim::Jr => "jr",
            OrbitClaim::Sigma11 => "sigma11",
            OrbitClaim::Sigma12 => "sigma12",
            OrbitClaim::A11 => "a11",
            OrbitClaim::Sigma12C => "sigma12c",
            OrbitClaim::C12 => "c12",
            OrbitClaim::D12 => "d12",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            OrbitClaim::R1 => "K(R^1) = R_{q-1}",
            OrbitClaim::Jr => "K(JR_{q-1}) = R^1",
            OrbitClaim::Sigma11 => "K(Sigma_{i,i}) = A^{i,i}",
            OrbitClaim::Sigma12 => "K(Sigma_{i,j}) = A^{i,j} ∩ Sigma_{i,i} ∩ Sigma_{j,j}",
            OrbitClaim::A11 => "K(A^{1,1}) = B^{1,1} ∩ I(Sigma_{1,1})",
            OrbitClaim::Sigma12C => "K(Sigma_{1,2}) = C^{1,2}",
            OrbitClaim::C12 => "K(C^{1,2}) = D^{1,2} ∩ I(Sigma_{1,2})",
            OrbitClaim::D12 => "K(D^{1,2}) = D^{1,2}, restriction equal to K",
        }
    }

    pub fn chart(self) -> Option<ChartTag> {
        match self {
            OrbitClaim::R1 => Some(ChartTag::R1),
            OrbitClaim::A11 => Some(ChartTag::A11),
            OrbitClaim::C12 => Some(ChartTag::C12),
            OrbitClaim::D12 => Some(ChartTag::D12_1),
            _ => None,
        }
    }
}

impl std::str::FromStr for OrbitClaim {
    type Err = ChartError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OrbitClaim::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| ChartError::InadmissibleParams(format!("unknown claim `{s}`")))
    }
}

/// Where a single trial takes its path from.
#[derive(Clone, Debug, PartialEq)]
pub enum TrialSource {
    /// Random parameters from `seed`; `index` selects the coordinate pair
    /// for the claims that range over one.
    Seeded { seed: u64, index: usize },
    /// A given chart point, for the chart-based claims.
    Point(ChartPoint),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitReport {
    pub claim: OrbitClaim,
    pub q: usize,
    pub chart: Option<ChartTag>,
    pub seed: u64,
    /// Coordinate pair `(i, j)` (0-based) the path approaches, if any.
    pub target: Option<(usize, usize)>,
    pub resamples: usize,
    pub valuations: Vec<Vec<i64>>,
    #[serde(serialize_with = "crate::serde_util::rational_matrix")]
    pub limit: RingMatrix<Rational>,
    pub base_order: Option<i64>,
    pub pass: bool,
    pub label: &'static str,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitSummary {
    pub claim: OrbitClaim,
    pub statement: &'static str,
    pub q: usize,
    pub seed: u64,
    pub trials: Vec<OrbitReport>,
    pub pass: bool,
}

/// Expected valuation of an image entry relative to the base order `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Zero,
    K,
    TwoK,
    AtLeastTwoK,
}

fn pattern(q: usize, f: impl Fn(usize, usize) -> Cell) -> Vec<Vec<Cell>> {
    (0..q)
        .map(|i| (0..q).map(|j| f(i.min(j), i.max(j))).collect())
        .collect()
}

/// Checks `valuations` against `cells`; returns the base order on success.
fn match_pattern(valuations: &[Vec<i64>], cells: &[Vec<Cell>], diag: &mut Vec<String>) -> Option<i64> {
    let n = valuations.len();
    let k = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| cells[i][j] == Cell::K)
        .map(|(i, j)| valuations[i][j])
        .filter(|&v| v > 0)
        .min();
    let Some(k) = k else {
        diag.push("no designated entry vanishes at the divisor".into());
        return None;
    };
    let mut ok = true;
    for i in 0..n {
        for j in 0..n {
            let v = valuations[i][j];
            let good = match cells[i][j] {
                Cell::Zero => v == 0,
                Cell::K => v == k,
                Cell::TwoK => v == 2 * k,
                Cell::AtLeastTwoK => v >= 2 * k,
            };
            if !good {
                ok = false;
                diag.push(format!(
                    "entry ({i}, {j}) has valuation {v}, expected {:?} with k = {k}",
                    cells[i][j]
                ));
            }
        }
    }
    ok.then_some(k)
}

fn orders_of(cells: &[Vec<Cell>], k: i64) -> Vec<Vec<i64>> {
    cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| match c {
                    Cell::Zero => 0,
                    Cell::K => k,
                    Cell::TwoK | Cell::AtLeastTwoK => 2 * k,
                })
                .collect()
        })
        .collect()
}

fn cofactor(m: &RingMatrix<Rational>, r: usize, c: usize) -> Rational {
    let n = m.size();
    let rows: Vec<usize> = (0..n).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
    let minor = RingMatrix::from_fn(n - 1, |i, j| m.get(rows[i], cols[j]).clone());
    let d = det(&RationalField, &minor);
    if (r + c).is_multiple_of(2) {
        d
    } else {
        -d
    }
}

fn entrywise_reciprocal(m: &RingMatrix<Rational>) -> RingMatrix<Rational> {
    m.map(|x| if x.is_zero() { Rational::zero() } else { x.recip() })
}

fn proportional_to_identity(m: &RingMatrix<Rational>) -> bool {
    matrices_projectively_equal(m, &identity(&RationalField, m.size()))
}

fn degenerate(msg: &str) -> ChartError {
    ChartError::DegenerateSample(msg.into())
}

struct Outcome {
    image: SeriesImage,
    base_order: Option<i64>,
    pass: bool,
    diagnostics: Vec<String>,
    target: Option<(usize, usize)>,
}

fn series_of(m: &RingMatrix<LaurentSeries>, q: usize) -> Result<SeriesImage, ChartError> {
    k_series(&SymPoint::from_matrix(m), BASE_PRECISION_PER_Q * q)
}

fn chart_point_for(claim: OrbitClaim, q: usize, source: &TrialSource) -> Result<ChartPoint, ChartError> {
    let tag = claim.chart().expect("chart claim");
    match source {
        TrialSource::Point(p) if p.chart.tag == tag && p.chart.q == q => Ok(p.clone()),
        TrialSource::Point(p) => Err(ChartError::InadmissibleParams(format!(
            "claim {} needs a {tag} point for q = {q}, got {} for q = {}",
            claim.id(),
            p.chart.tag,
            p.chart.q
        ))),
        TrialSource::Seeded { seed, .. } => Ok(Chart::new(tag, q)?.random_point(&mut rng(*seed))),
    }
}

fn block_from(m: &RingMatrix<Rational>, from: usize) -> RingMatrix<Rational> {
    RingMatrix::from_fn(m.size() - from, |i, j| m.get(i + from, j + from).clone())
}

fn check_r1(q: usize, p: &ChartPoint) -> Result<Outcome, ChartError> {
    let v = block_from(&p.data, 1);
    if rank_of(&v) < q - 1 {
        return Err(degenerate("the v block is singular"));
    }
    let x = chart_param(p)?.to_matrix();
    let image = series_of(&x, q)?;
    let limit = image.limit();
    let rank = rank_of(&limit);
    let mut diagnostics = vec![format!("limit rank {rank}")];
    // expected limit A^t diag(0, v'^-1) A with v'_jk = -v_jk / (nu_j nu_k)^2
    // and A the identity with first column (1, -1/nu_2, ..., -1/nu_q)
    let nu = p.nu.as_ref().expect("R1 point");
    let vp = RingMatrix::from_fn(q - 1, |j, k| {
        let w = &nu[j + 1] * &nu[k + 1];
        -v.get(j, k) / (&w * &w)
    });
    let closed = match crate::arith::matrix::invert_field(&RationalField, &vp) {
        Some(vinv) => {
            let mid = RingMatrix::from_fn(q, |i, j| {
                if i == 0 || j == 0 {
                    Rational::zero()
                } else {
                    vinv.get(i - 1, j - 1).clone()
                }
            });
            let a = RingMatrix::from_fn(q, |i, j| {
                if i == j {
                    Rational::one()
                } else if j == 0 {
                    -nu[i].recip()
                } else {
                    Rational::zero()
                }
            });
            let f = RationalField;
            matrices_projectively_equal(&limit, &mat_mul(&f, &mat_mul(&f, &a.transpose(), &mid), &a))
        }
        None => false,
    };
    diagnostics.push(format!("limit matches the conjugated block inverse: {closed}"));
    Ok(Outcome {
        pass: rank == q - 1 && closed,
        base_order: None,
        image,
        diagnostics,
        target: None,
    })
}

fn check_jr(q: usize, seed: u64) -> Result<Outcome, ChartError> {
    let mut r = rng(seed);
    let w0 = random_symmetric_of_rank(q, q - 1, &mut r);
    if w0.entries().iter().any(Zero::is_zero) || rank_of(&w0) != q - 1 {
        return Err(degenerate("w0 has a zero entry or the wrong rank"));
    }
    let g = SymPoint::from_fn(q, |_| random_rational(&mut r, PATH_BOUND)).to_matrix();
    let build = |p: usize| -> Result<RingMatrix<LaurentSeries>, ChartError> {
        let mut out = Vec::with_capacity(q * q);
        for i in 0..q {
            for j in 0..q {
                let e = LaurentSeries::exact(0, vec![w0.get(i, j).clone(), g.get(i, j).clone()]);
                out.push(e.invert(p)?);
            }
        }
        Ok(RingMatrix::from_fn(q, |i, j| out[i * q + j].clone()))
    };
    let image = k_series_with(build, BASE_PRECISION_PER_Q * q)?;
    let limit = image.limit();
    let rank = rank_of(&limit);
    let adj = crate::arith::adjugate(&RationalField, &w0);
    let matches_adj = matrices_projectively_equal(&limit, &adj);
    Ok(Outcome {
        pass: rank == 1 && matches_adj,
        base_order: None,
        image,
        diagnostics: vec![
            format!("limit rank {rank}"),
            format!("limit proportional to adj(w0): {matches_adj}"),
        ],
        target: None,
    })
}

/// Generic symmetric path with the entries at `(i, j)` and `(j, i)` equal
/// to `c s`.
fn coordinate_path(q: usize, seed: u64, i: usize, j: usize) -> RingMatrix<LaurentSeries> {
    let mut r = rng(seed);
    let x = SymPoint::from_fn(q, |_| random_rational(&mut r, PATH_BOUND)).to_matrix();
    RingMatrix::from_fn(q, |a, b| {
        let c = x.get(a, b).clone();
        let hit = (a, b) == (i, j) || (a, b) == (j, i);
        LaurentSeries::monomial(c, i64::from(hit))
    })
}

fn check_coordinate(claim: OrbitClaim, q: usize, seed: u64, index: usize) -> Result<Outcome, ChartError> {
    let (i, j) = match claim {
        OrbitClaim::Sigma11 => (index % q, index % q),
        OrbitClaim::Sigma12 => {
            let pairs: Vec<(usize, usize)> = (0..q).flat_map(|a| (a + 1..q).map(move |b| (a, b))).collect();
            pairs[index % pairs.len()]
        }
        _ => (0, 1),
    };
    let image = series_of(&coordinate_path(q, seed, i, j), q)?;
    let cells = match claim {
        OrbitClaim::Sigma11 => pattern(q, |a, b| if a == i || b == i { Cell::K } else { Cell::Zero }),
        OrbitClaim::Sigma12 => pattern(q, |a, b| {
            if (a == b) && (a == i || a == j) {
                Cell::AtLeastTwoK
            } else if a == i || a == j || b == i || b == j {
                Cell::K
            } else {
                Cell::Zero
            }
        }),
        _ => pattern(q, |a, b| {
            if a == b && a < 2 {
                Cell::TwoK
            } else if a < 2 {
                Cell::K
            } else {
                Cell::Zero
            }
        }),
    };
    let mut diagnostics = Vec::new();
    let base_order = match_pattern(&image.valuations, &cells, &mut diagnostics);
    Ok(Outcome {
        pass: base_order.is_some(),
        base_order,
        image,
        diagnostics,
        target: Some((i, j)),
    })
}

/// Leading-coefficient checks shared by the A11, C12 and D12 claims.
fn check_block_chart(claim: OrbitClaim, q: usize, p: &ChartPoint) -> Result<Outcome, ChartError> {
    let f = RationalField;
    let data = &p.data;
    let x = chart_param(p)?.to_matrix();
    let (cells, reference) = match claim {
        OrbitClaim::A11 => {
            let mut m0 = entrywise_reciprocal(data);
            m0.set(0, 0, Rational::zero());
            let cells = pattern(q, |a, b| match (a, b) {
                (0, 0) => Cell::TwoK,
                (0, _) => Cell::K,
                _ => Cell::Zero,
            });
            (cells, m0)
        }
        OrbitClaim::C12 => {
            let mut m0 = entrywise_reciprocal(data);
            m0.set(0, 1, Rational::zero());
            m0.set(1, 0, Rational::zero());
            let cells = pattern(q, |a, b| {
                if b < 2 {
                    Cell::TwoK
                } else if a < 2 {
                    Cell::K
                } else {
                    Cell::Zero
                }
            });
            (cells, m0)
        }
        _ => {
            let cells = pattern(q, |a, b| {
                if b < 2 {
                    Cell::TwoK
                } else if a < 2 {
                    Cell::K
                } else {
                    Cell::Zero
                }
            });
            let k = k_eval_matrix(&f, data).map_err(|e| degenerate(&e.to_string()))?;
            (cells, k)
        }
    };
    if claim != OrbitClaim::D12 && crate::arith::matrix::invert_field(&f, &reference).is_none() {
        return Err(degenerate("the limiting reciprocal matrix is singular"));
    }
    let image = series_of(&x, q)?;
    let mut diagnostics = Vec::new();
    let base_order = match_pattern(&image.valuations, &cells, &mut diagnostics);
    let Some(k) = base_order else {
        return Ok(Outcome {
            pass: false,
            base_order,
            image,
            diagnostics,
            target: None,
        });
    };
    let Some(lead) = image.coefficients_at(&orders_of(&cells, k)) else {
        return Err(ChartError::PrecisionExhausted(image.precision));
    };
    let pass = match claim {
        OrbitClaim::D12 => {
            let ok = matrices_projectively_equal(&lead, &reference);
            diagnostics.push(format!("leading block data equals K of the source data: {ok}"));
            ok
        }
        _ => {
            let (r, c) = if claim == OrbitClaim::A11 { (0, 0) } else { (0, 1) };
            let inverse_ok = proportional_to_identity(&mat_mul(&f, &lead, &reference));
            let cof = cofactor(&lead, r, c);
            diagnostics.push(format!(
                "leading block data inverts the limiting reciprocal: {inverse_ok}"
            ));
            diagnostics.push(format!("cofactor ({r}, {c}) of the leading data: {cof}"));
            inverse_ok && cof.is_zero()
        }
    };
    Ok(Outcome {
        pass,
        base_order,
        image,
        diagnostics,
        target: None,
    })
}

/// One trial of a claim. Degenerate samples are reported as errors so the
/// caller can resample.
pub fn orbit_trial(claim: OrbitClaim, q: usize, source: &TrialSource) -> Result<OrbitReport, ChartError> {
    const MIN_Q: usize = 5;
    if q < MIN_Q {
        return Err(ChartError::UnsupportedQ { q, min: MIN_Q });
    }
    let (seed, index) = match source {
        TrialSource::Seeded { seed, index } => (*seed, *index),
        TrialSource::Point(_) => (0, 0),
    };
    let outcome = match claim {
        OrbitClaim::R1 => check_r1(q, &chart_point_for(claim, q, source)?),
        OrbitClaim::Jr => check_jr(q, seed),
        OrbitClaim::Sigma11 | OrbitClaim::Sigma12 | OrbitClaim::Sigma12C => check_coordinate(claim, q, seed, index),
        OrbitClaim::A11 | OrbitClaim::C12 | OrbitClaim::D12 => {
            check_block_chart(claim, q, &chart_point_for(claim, q, source)?)
        }
    };
    let outcome = outcome.map_err(|e| match e {
        ChartError::SingularSeries => degenerate("singular reciprocal over the series field"),
        other => other,
    })?;
    Ok(OrbitReport {
        claim,
        q,
        chart: claim.chart(),
        seed,
        target: outcome.target,
        resamples: 0,
        limit: outcome.image.limit(),
        valuations: outcome.image.valuations,
        base_order: outcome.base_order,
        pass: outcome.pass,
        label: LABEL,
        diagnostics: outcome.diagnostics,
    })
}

/// Runs `trials` seeded trials of a claim, resampling degenerate draws.
pub fn orbit_check(
    claim: OrbitClaim,
    q: usize,
    seed: u64,
    trials: usize,
    exec: Exec,
) -> Result<OrbitSummary, ChartError> {
    let results = par::map_range(exec, trials, |t| {
        let base = split(seed, claim.id(), t as u64);
        for attempt in 0..MAX_RESAMPLES {
            let s = if attempt == 0 {
                base
            } else {
                split(base, "resample", attempt as u64)
            };
            match orbit_trial(claim, q, &TrialSource::Seeded { seed: s, index: t }) {
                Ok(mut r) => {
                    r.resamples = attempt;
                    return Ok(r);
                }
                Err(ChartError::DegenerateSample(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(degenerate("resample limit reached"))
    });
    let trials = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(OrbitSummary {
        claim,
        statement: claim.statement(),
        q,
        seed,
        pass: !trials.is_empty() && trials.iter().all(|t| t.pass),
        trials,
    })
}
