//! Structured run reports written by the command-line front end.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Open,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Open => "open",
            CheckStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub check: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub verdicts: Vec<CheckVerdict>,
    pub witnesses: BTreeMap<String, Value>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new<I, S>(command: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into_iter().map(Into::into).collect(),
            verdicts: Vec::new(),
            witnesses: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn verdict(&mut self, check: impl Into<String>, status: CheckStatus, detail: impl Into<String>) {
        self.verdicts.push(CheckVerdict {
            check: check.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn check(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let status = if passed { CheckStatus::Pass } else { CheckStatus::Fail };
        self.verdict(check, status, detail);
    }

    pub fn witness(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("witnesses serialize");
        self.witnesses.insert(key.into(), value);
    }

    /// Runs `f`, recording its wall time under `key`.
    pub fn timed<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let start = std::time::Instant::now();
        let out = f();
        self.timings_ms
            .insert(key.to_string(), start.elapsed().as_secs_f64() * 1000.0);
        out
    }

    pub fn any_failure(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == CheckStatus::Fail)
    }

    /// The report with timings cleared; everything else is deterministic.
    pub fn without_timings(&self) -> Self {
        Self {
            timings_ms: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            crate::Error::Format(format!("line {}, column {}: {e}", e.line(), e.column()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = RunReport::new(["gp", "verify", "fano.json"]);
        r.check("axioms", true, "n = 3");
        r.verdict("condition", CheckStatus::NotApplicable, "");
        r.witness("order", (2, 2));
        r.timed("verify", || 1 + 1);
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"schema_version\": 1"));
        assert!(r.to_json().contains("\"n/a\""));
        assert!(!r.any_failure());
    }

    #[test]
    fn timings_do_not_affect_comparison() {
        let mut a = RunReport::new(["x"]);
        let mut b = a.clone();
        a.timed("t", || ());
        b.timings_ms.insert("t".into(), 12345.0);
        assert_eq!(a.without_timings(), b.without_timings());
    }
}
