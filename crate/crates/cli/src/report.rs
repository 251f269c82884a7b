use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Exploratory,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    /// The mathematical statement being checked.
    pub paper_ref: String,
    pub verdict: Verdict,
    pub data: Value,
}

impl Record {
    pub fn new(id: impl Into<String>, paper_ref: impl Into<String>, verdict: Verdict, data: Value) -> Self {
        Record {
            id: id.into(),
            paper_ref: paper_ref.into(),
            verdict,
            data,
        }
    }

    pub fn pass_if(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn q(&self) -> Option<u64> {
        self.data.get("q").and_then(Value::as_u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Version {
    pub schema: u32,
    pub tool: String,
}

impl Default for Version {
    fn default() -> Self {
        Version {
            schema: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: Version,
    pub config: RunConfig,
    pub records: Vec<Record>,
    pub timing: Timing,
}

impl Report {
    /// Records are sorted by id so the output does not depend on the order
    /// in which jobs finished.
    pub fn new(config: RunConfig, mut records: Vec<Record>, elapsed: Duration) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        Report {
            version: Version::default(),
            config,
            records,
            timing: Timing {
                elapsed_ms: elapsed.as_millis() as u64,
            },
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    /// 0 when nothing failed, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.failed().next().is_none() {
            0
        } else {
            2
        }
    }
}
