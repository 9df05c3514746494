//! Versioned JSON report and its text rendering.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub id: String,
    pub tag: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub wall_time_ms: f64,
}

/// Result of one check body: `Ok(None)` passes, `Ok(Some(reason))` is skipped,
/// `Err(witness)` fails.
pub type Outcome = Result<Option<String>, String>;

impl Record {
    pub fn run(id: impl Into<String>, tag: &str, params: Value, body: impl FnOnce() -> Outcome) -> Record {
        let start = Instant::now();
        let outcome = body();
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let (status, witness) = match outcome {
            Ok(None) => (Status::Pass, None),
            Ok(Some(reason)) => (Status::Skipped, Some(reason)),
            Err(w) => (Status::Fail, Some(w)),
        };
        Record {
            id: id.into(),
            tag: tag.into(),
            params,
            status,
            witness,
            wall_time_ms,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(seed: u64, records: Vec<Record>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "qlens {}  seed {}", self.tool_version, self.seed);
        let _ = writeln!(out, "{:<width$}  {:<7}  {:>10}  detail", "check", "status", "ms");
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:<7}  {:>10.1}  {}",
                r.id,
                status,
                r.wall_time_ms,
                r.witness.as_deref().unwrap_or("")
            );
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn outcome_maps_to_status() {
        let pass = Record::run("a", "t", json!({}), || Ok(None));
        let skip = Record::run("b", "t", json!({}), || Ok(Some("empty".into())));
        let fail = Record::run("c", "t", json!({}), || Err("witness".into()));
        assert_eq!(pass.status, Status::Pass);
        assert_eq!(skip.status, Status::Skipped);
        assert_eq!(fail.witness.as_deref(), Some("witness"));
        let report = Report::new(3, vec![pass, skip, fail]);
        assert!(!report.passed());
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["records"][1]["status"], "skipped");
        assert!(v["records"][0].get("witness").is_none());
        assert!(report.to_text().contains("1 passed, 1 failed, 1 skipped"));
    }
}
