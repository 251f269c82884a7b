use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use invdeg_core::symspace::Space;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Degrees,
    Charpoly,
    VerifyOrbits,
    Orders,
    Report,
}

/// Inclusive range of matrix sizes, written `5` or `5..12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct QRange {
    pub lo: usize,
    pub hi: usize,
}

impl QRange {
    pub fn single(q: usize) -> Self {
        QRange { lo: q, hi: q }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    /// The only value of a one-element range.
    pub fn exactly_one(self) -> Result<usize, CliError> {
        if self.lo == self.hi {
            Ok(self.lo)
        } else {
            Err(CliError::Usage(format!("expected a single q, got {self}")))
        }
    }
}

impl fmt::Display for QRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl FromStr for QRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("not a matrix size: {t:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let q = parse(s)?;
                (q, q)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(QRange { lo, hi })
    }
}

impl TryFrom<String> for QRange {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<QRange> for String {
    fn from(r: QRange) -> Self {
        r.to_string()
    }
}

pub const DEFAULT_PRIMES: usize = 3;
pub const DEFAULT_LINES: usize = 3;
pub const DEFAULT_TRIALS: usize = 10;

/// Iterates computed by default: 5 for `q <= 4`, 3 for `q = 5`, 2 above.
pub fn default_n(q: usize) -> usize {
    match q {
        0..=4 => 5,
        5 => 3,
        _ => 2,
    }
}

/// Everything a run depends on. Echoed in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub q: Option<QRange>,
    pub n_max: Option<usize>,
    pub space: Space,
    pub primes: usize,
    pub lines: usize,
    pub trials: usize,
    pub seed: u64,
    pub precision: Option<usize>,
    pub claim: Option<String>,
    pub input: Option<PathBuf>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub sequential: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            q: None,
            n_max: None,
            space: Space::Sym,
            primes: DEFAULT_PRIMES,
            lines: DEFAULT_LINES,
            trials: DEFAULT_TRIALS,
            seed: 0,
            precision: None,
            claim: None,
            input: None,
            format: match command {
                Command::Report => Format::Markdown,
                _ => Format::Json,
            },
            out: None,
            sequential: false,
        }
    }

    pub fn q(&self) -> Result<QRange, CliError> {
        self.q.ok_or_else(|| CliError::Usage("--q is required".into()))
    }
}
