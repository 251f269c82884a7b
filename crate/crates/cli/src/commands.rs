use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use invdeg_core::arith::rational::random_rational;
use invdeg_core::arith::{Rational, RationalField};
use invdeg_core::charts::{
    orbit_check, vanishing_orders_at, ChartError, OrbitClaim, VanishingOrders, BASE_PRECISION_PER_Q,
};
use invdeg_core::degseq::{
    degree_sequence, delta_formula, estimate_delta, DegSeqError, DegreeSequence, SequenceConfig,
};
use invdeg_core::par::Exec;
use invdeg_core::picard::{check_factor, model_sequence};
use invdeg_core::seed::{rng, split};
use invdeg_core::symspace::{
    homogeneity_check, k_eval, matrix_inverse, projective_eq, random_sym_point, reciprocal, rho_conjugate,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::config::{default_n, Command, RunConfig};
use crate::report::{Record, Report, Verdict, SCHEMA_VERSION};
use crate::CliError;

const DEGREE_STATEMENT: &str = "deg K = q^2 - q + 1";
const GROWTH_STATEMENT: &str = "delta(K) = lim deg(K^n)^(1/n)";
const FACTOR_STATEMENT: &str =
    "x^2 - (q^2 - 4q + 2) x + 1 divides the characteristic polynomial of L1 and carries its largest root modulus";
const ORDERS_STATEMENT: &str = "(b, alpha, beta, gamma, lambda) = (q-2, 2q-3, 2q-2, 4q-6, 4q-4)";
const SUMMARY_STATEMENT: &str = "measured deg(K^n) against the linear model and delta";

/// Largest q accepted by `orders`.
pub const ORDERS_MAX_Q: usize = 6;
const MODEL_MIN_Q: usize = 5;
const SAMPLE_BOUND: i64 = 10_000;

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let records = match cfg.command {
        Command::Degrees => cmd_degrees(cfg)?,
        Command::Charpoly => cmd_charpoly(cfg)?,
        Command::VerifyOrbits => cmd_verify_orbits(cfg)?,
        Command::Orders => cmd_orders(cfg)?,
        Command::Report => cmd_report(cfg)?,
    };
    Ok(Report::new(cfg.clone(), records, start.elapsed()))
}

fn exec(cfg: &RunConfig) -> Exec {
    if cfg.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

pub fn cmd_degrees(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let q = cfg.q()?.exactly_one()?;
    let mut sc = SequenceConfig::new(q, cfg.space, cfg.n_max.unwrap_or(default_n(q)));
    sc.primes = cfg.primes;
    sc.lines = cfg.lines;
    sc.seed = cfg.seed;
    sc.exec = exec(cfg);
    let seq = match degree_sequence(&sc) {
        Ok(seq) => seq,
        Err(DegSeqError::NoConsensus(seq)) => *seq,
        Err(DegSeqError::InvalidConfig(m)) => return Err(CliError::Usage(m)),
        Err(e) => return Err(CliError::Resource(e.to_string())),
    };
    Ok(degree_records(&seq))
}

fn degree_records(seq: &DegreeSequence) -> Vec<Record> {
    let q = seq.q;
    let first = &seq.entries[0];
    let expected = q * q - q + 1;
    let est = estimate_delta(seq);
    let rows: Vec<Value> = seq
        .entries
        .iter()
        .enumerate()
        .map(|(k, e)| {
            json!({
                "n": e.n,
                "degree": e.degree,
                "witnesses": e.witnesses.len(),
                "consensus": e.consensus,
                "ratio": k.checked_sub(1).map(|i| est.ratios[i]),
            })
        })
        .collect();
    vec![
        Record::new(
            format!("degrees.q{q:02}.first"),
            DEGREE_STATEMENT,
            Record::pass_if(first.degree == expected && first.consensus),
            json!({ "q": q, "degree": first.degree, "expected": expected }),
        ),
        Record::new(
            format!("degrees.q{q:02}.sequence"),
            "deg(K^n) agrees across primes and lines",
            Record::pass_if(seq.consensus),
            json!({ "q": q, "degrees": seq.degrees(), "rows": rows, "sequence": seq }),
        ),
        Record::new(
            format!("degrees.q{q:02}.delta"),
            GROWTH_STATEMENT,
            Verdict::Exploratory,
            json!({ "q": q, "estimate": est }),
        ),
    ]
}

pub fn cmd_charpoly(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let range = cfg.q()?;
    if range.lo < MODEL_MIN_Q {
        return Err(CliError::Usage(format!(
            "the linear model assumes q >= {MODEL_MIN_Q}, got q = {}",
            range.lo
        )));
    }
    let width = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(12));
    range
        .iter()
        .map(|q| {
            let r = check_factor(q).map_err(|e| CliError::Usage(e.to_string()))?;
            let ok = r.divides && r.dominant_match && r.dominant_root.width() <= width;
            Ok(Record::new(
                format!("charpoly.q{q:02}"),
                FACTOR_STATEMENT,
                Record::pass_if(ok),
                json!({ "q": q, "dominant": r.dominant_root.midpoint_f64(), "report": r }),
            ))
        })
        .collect()
}

pub fn cmd_verify_orbits(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let q = cfg.q()?.exactly_one()?;
    if q < MODEL_MIN_Q {
        return Err(CliError::Usage(format!(
            "orbit checks need q >= {MODEL_MIN_Q}, got q = {q}"
        )));
    }
    let claims: Vec<OrbitClaim> = match &cfg.claim {
        Some(c) => vec![c.parse().map_err(|e: ChartError| CliError::Usage(e.to_string()))?],
        None => OrbitClaim::ALL.to_vec(),
    };
    let mut records = Vec::new();
    for claim in claims {
        let summary =
            orbit_check(claim, q, cfg.seed, cfg.trials, exec(cfg)).map_err(|e| CliError::Resource(e.to_string()))?;
        records.push(Record::new(
            format!("orbits.q{q:02}.{}", claim.id()),
            claim.statement(),
            Record::pass_if(summary.pass),
            json!({ "q": q, "trials": summary.trials.len(), "summary": summary }),
        ));
    }
    if cfg.claim.is_none() {
        records.extend(identity_records(q, cfg.trials, cfg.seed)?);
    }
    Ok(records)
}

fn identity_records(q: usize, trials: usize, seed: u64) -> Result<Vec<Record>, CliError> {
    let f = RationalField;
    let mut r = rng(split(seed, "identity", 0));
    let points: Vec<_> = (0..trials).map(|_| random_sym_point(q, &mut r, SAMPLE_BOUND)).collect();
    let scales: Vec<Rational> = (0..trials).map(|_| random_rational(&mut r, SAMPLE_BOUND)).collect();
    let mut records = Vec::new();
    for block in [1, 2] {
        let mut ok = true;
        for (x, t) in points.iter().zip(&scales) {
            ok &= homogeneity_check(x, t, block).map_err(|e| CliError::Resource(e.to_string()))?;
        }
        records.push(Record::new(
            format!("identity.q{q:02}.homogeneity.block{block}"),
            "K(D x D) = D K(x) D for D = diag(t I_k, I_{q-k})",
            Record::pass_if(ok),
            json!({ "q": q, "block": block, "points": trials }),
        ));
    }
    let mut equivariant = true;
    let mut inverse = true;
    for x in &points {
        let kx = k_eval(&f, x).map_err(|e| CliError::Resource(e.to_string()))?;
        for l in 0..q {
            for m in l + 1..q {
                let lhs = k_eval(&f, &rho_conjugate(l, m, x)).map_err(|e| CliError::Resource(e.to_string()))?;
                equivariant &= projective_eq(&f, lhs.coords(), rho_conjugate(l, m, &kx).coords());
            }
        }
        let back = matrix_inverse(&f, x)
            .and_then(|y| reciprocal(&f, &y))
            .and_then(|y| k_eval(&f, &y));
        inverse &= back.is_ok_and(|b| projective_eq(&f, b.coords(), x.coords()));
    }
    records.push(Record::new(
        format!("identity.q{q:02}.rho"),
        "K(P x P^t) = P K(x) P^t for every transposition P",
        Record::pass_if(equivariant),
        json!({ "q": q, "points": trials, "pairs": q * (q - 1) / 2 }),
    ));
    records.push(Record::new(
        format!("identity.q{q:02}.inverse"),
        "K(J(I(x))) = x",
        Record::pass_if(inverse),
        json!({ "q": q, "points": trials }),
    ));
    Ok(records)
}

pub fn cmd_orders(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let q = cfg.q()?.exactly_one()?;
    if q < MODEL_MIN_Q {
        return Err(CliError::Usage(format!(
            "vanishing orders need q >= {MODEL_MIN_Q}, got q = {q}"
        )));
    }
    if q > ORDERS_MAX_Q {
        return Err(CliError::Resource(format!(
            "vanishing orders are limited to q <= {ORDERS_MAX_Q} by exact series cost, got q = {q}"
        )));
    }
    let precision = cfg.precision.unwrap_or(BASE_PRECISION_PER_Q * q);
    let measured = vanishing_orders_at(q, cfg.seed, precision).map_err(|e| CliError::Resource(e.to_string()))?;
    let target = VanishingOrders::closed_form(q);
    Ok(vec![Record::new(
        format!("orders.q{q:02}"),
        ORDERS_STATEMENT,
        Record::pass_if(measured == target),
        json!({ "q": q, "measured": measured, "target": target, "precision": precision }),
    )])
}

/// Merges every `*.json` report in the input directory and adds one
/// summary record per q.
pub fn cmd_report(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let dir = cfg
        .input
        .as_deref()
        .ok_or_else(|| CliError::Usage("report needs an input directory".into()))?;
    let reports = load_reports(dir)?;
    if reports.is_empty() {
        return Err(CliError::Usage(format!("no JSON reports in {}", dir.display())));
    }
    let mut records: Vec<Record> = reports.into_iter().flat_map(|r| r.records).collect();
    let mut degrees: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let mut qs: Vec<u64> = records.iter().filter_map(Record::q).collect();
    qs.sort_unstable();
    qs.dedup();
    for r in &records {
        if r.id.ends_with(".sequence") {
            if let (Some(q), Some(d)) = (r.q(), r.data.get("degrees").and_then(Value::as_array)) {
                degrees.insert(q, d.iter().filter_map(Value::as_u64).collect());
            }
        }
    }
    for q in qs {
        records.push(summary_record(q as usize, degrees.get(&q).map(Vec::as_slice)));
    }
    Ok(records)
}

fn summary_record(q: usize, measured: Option<&[u64]>) -> Record {
    let delta = delta_formula(q).midpoint_f64();
    let measured = measured.unwrap_or(&[]);
    let n_max = measured.len().saturating_sub(1);
    let model: Vec<Option<u64>> = if q >= MODEL_MIN_Q && n_max > 0 {
        model_sequence(q, n_max)
            .map(|m| m.iter().map(|v| v.to_u64()).collect())
            .unwrap_or_default()
    } else {
        vec![]
    };
    let rows: Vec<Value> = (1..=n_max)
        .map(|n| {
            let d = measured[n];
            let ratio = d as f64 / measured[n - 1] as f64;
            json!({
                "n": n,
                "measured": d,
                "model": model.get(n - 1).copied().flatten(),
                "ratio": ratio,
                "gap": (ratio - delta) / delta,
            })
        })
        .collect();
    Record::new(
        format!("summary.q{q:02}"),
        SUMMARY_STATEMENT,
        Verdict::Exploratory,
        json!({ "q": q, "delta": delta, "rows": rows }),
    )
}

fn load_reports(dir: &Path) -> Result<Vec<Report>, CliError> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p)?;
            let raw: Value = serde_json::from_str(&text)?;
            let found = raw.pointer("/version/schema").and_then(Value::as_u64);
            if found != Some(u64::from(SCHEMA_VERSION)) {
                return Err(CliError::Schema { path: p, found });
            }
            Ok(serde_json::from_value(raw)?)
        })
        .collect()
}
