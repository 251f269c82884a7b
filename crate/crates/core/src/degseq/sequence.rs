use serde::Serialize;

use super::line::{iterate_once, random_line};
use super::DegSeqError;
use crate::arith::prime::random_prime;
use crate::par::{self, Exec};
use crate::seed::{rng, split};
use crate::symspace::{Space, SubspaceSpec};

/// Attempts per witness before giving up on finding a usable line.
pub const MAX_RESAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceConfig {
    pub q: usize,
    pub space: Space,
    pub n_max: usize,
    pub primes: usize,
    pub lines: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl SequenceConfig {
    pub fn new(q: usize, space: Space, n_max: usize) -> Self {
        SequenceConfig {
            q,
            space,
            n_max,
            primes: 3,
            lines: 3,
            seed: 0,
            exec: Exec::default(),
        }
    }

    fn validate(&self) -> Result<(), DegSeqError> {
        if self.q < 3 {
            return Err(DegSeqError::InvalidConfig(format!(
                "q must be at least 3, got {}",
                self.q
            )));
        }
        if self.n_max == 0 {
            return Err(DegSeqError::InvalidConfig("n_max must be at least 1".into()));
        }
        if self.primes * self.lines < 2 {
            return Err(DegSeqError::InvalidConfig(
                "consensus needs at least two witnesses".into(),
            ));
        }
        Ok(())
    }
}

/// One `(prime, line)` pair and the degrees it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub prime: u64,
    pub line_seed: u64,
    /// Lines discarded before this one was accepted.
    pub resamples: usize,
    /// Degree after `n` iterations at index `n - 1`.
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub n: usize,
    pub degree: usize,
    /// `(prime, line seed)` of every witness reporting `degree`.
    pub witnesses: Vec<(u64, u64)>,
    pub consensus: bool,
    /// Distinct degrees observed when the witnesses disagree.
    pub observed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub q: usize,
    pub space: Space,
    pub entries: Vec<DegreeEntry>,
    pub consensus: bool,
    /// Set when a first round of witnesses disagreed and was replaced.
    pub retried: bool,
    pub rejected: Vec<Witness>,
}

impl DegreeSequence {
    /// Degrees for `n = 0..=n_max`, starting with the identity's 1.
    pub fn degrees(&self) -> Vec<usize> {
        std::iter::once(1)
            .chain(self.entries.iter().map(|e| e.degree))
            .collect()
    }
}

fn run_witness(spec: SubspaceSpec, prime: u64, base: u64, n_max: usize, exec: Exec) -> Result<Witness, DegSeqError> {
    for attempt in 0..MAX_RESAMPLES {
        let line_seed = if attempt == 0 {
            base
        } else {
            split(base, "resample", attempt as u64)
        };
        let mut path = match random_line(spec, prime, line_seed) {
            Ok(p) => p,
            Err(DegSeqError::DegenerateLine(_)) => continue,
            Err(e) => return Err(e),
        };
        let mut degrees = Vec::with_capacity(n_max);
        let mut ok = true;
        for _ in 0..n_max {
            match iterate_once(&path, exec) {
                Ok(next) => {
                    degrees.push(next.degree());
                    path = next;
                }
                Err(DegSeqError::IndeterminateLine) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if ok {
            return Ok(Witness {
                prime,
                line_seed,
                resamples: attempt,
                degrees,
            });
        }
    }
    Err(DegSeqError::ResampleLimit(MAX_RESAMPLES))
}

fn run_round(cfg: &SequenceConfig, round: u64) -> Result<Vec<Witness>, DegSeqError> {
    let spec = SubspaceSpec::new(cfg.space, cfg.q);
    let round_seed = split(cfg.seed, "round", round);
    let jobs: Vec<(u64, u64)> = (0..cfg.primes)
        .flat_map(|pi| {
            let prime = random_prime(&mut rng(split(round_seed, "prime", pi as u64)));
            (0..cfg.lines).map(move |li| (prime, split(round_seed, "line", (pi * 1000 + li) as u64)))
        })
        .collect();
    par::map(cfg.exec, jobs, |(prime, base)| {
        run_witness(spec, prime, base, cfg.n_max, cfg.exec)
    })
    .into_iter()
    .collect()
}

fn reduce(cfg: &SequenceConfig, witnesses: &[Witness]) -> Vec<DegreeEntry> {
    (1..=cfg.n_max)
        .map(|n| {
            let mut observed: Vec<usize> = witnesses.iter().map(|w| w.degrees[n - 1]).collect();
            observed.sort_unstable();
            observed.dedup();
            // the largest degree wins ties: a bad prime can only lower it
            let degree = *observed.last().expect("at least two witnesses");
            let agreeing: Vec<(u64, u64)> = witnesses
                .iter()
                .filter(|w| w.degrees[n - 1] == degree)
                .map(|w| (w.prime, w.line_seed))
                .collect();
            DegreeEntry {
                n,
                degree,
                consensus: observed.len() == 1 && agreeing.len() >= 2,
                witnesses: agreeing,
                observed,
            }
        })
        .collect()
}

/// Degrees of the iterates `n = 1..=n_max` restricted to generic lines,
/// agreed on by every `(prime, line)` witness. One disagreeing round is
/// replaced by fresh witnesses; a second disagreement is an error carrying
/// the full record.
pub fn degree_sequence(cfg: &SequenceConfig) -> Result<DegreeSequence, DegSeqError> {
    cfg.validate()?;
    let first = run_round(cfg, 0)?;
    let entries = reduce(cfg, &first);
    if entries.iter().all(|e| e.consensus) {
        return Ok(DegreeSequence {
            q: cfg.q,
            space: cfg.space,
            entries,
            consensus: true,
            retried: false,
            rejected: Vec::new(),
        });
    }
    let second = run_round(cfg, 1)?;
    let entries = reduce(cfg, &second);
    let consensus = entries.iter().all(|e| e.consensus);
    let seq = DegreeSequence {
        q: cfg.q,
        space: cfg.space,
        entries,
        consensus,
        retried: true,
        rejected: first,
    };
    if consensus {
        Ok(seq)
    } else {
        Err(DegSeqError::NoConsensus(Box::new(seq)))
    }
}
