//! The machine-readable run report shared by every subcommand.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            detail: reason.into(),
        }
    }

    /// A library error inside a check counts as a failure of that check.
    pub fn from_result(name: impl Into<String>, r: spinsec::Result<(bool, String)>) -> Self {
        match r {
            Ok((pass, detail)) => Check::new(name, pass, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

/// A check together with how long it took.
pub struct Timed {
    pub check: Check,
    pub millis: f64,
}

pub fn timed(f: impl FnOnce() -> Check) -> Timed {
    let start = Instant::now();
    let check = f();
    Timed {
        check,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    /// Wall time per check in milliseconds; the only nondeterministic field.
    pub timings_ms: BTreeMap<String, f64>,
    pub payload: serde_json::Value,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: Option<u64>, config: serde_json::Value) -> Self {
        RunReport {
            command,
            seed,
            config,
            checks: Vec::new(),
            timings_ms: BTreeMap::new(),
            payload: serde_json::Value::Null,
        }
    }

    pub fn push(&mut self, t: Timed) {
        self.timings_ms.insert(t.check.name.clone(), t.millis);
        self.checks.push(t.check);
    }

    pub fn failed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.failed() > 0)
    }

    pub fn summary(&self) -> String {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        format!(
            "{} passed, {} failed, {} skipped",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        )
    }
}
