use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::checks::{Check, Status};
use crate::config::Suite;
use crate::error::{CliError, CliResult};

/// Bumped whenever the serialized layout of [`Report`] changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub suite: Suite,
    /// Everything needed to replay the check with [`Check::run`].
    pub params: Check,
    pub status: Status,
    /// Witness data on success, the first counterexample on failure.
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub budget_exceeded: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: Option<Suite>,
    pub seed: u64,
    pub order: usize,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// A report with no records.
    pub fn empty() -> Self {
        Report { schema_version: SCHEMA_VERSION, suite: None, seed: 0, order: 0, records: Vec::new(), summary: Summary::default() }
    }

    pub fn new(suite: Suite, seed: u64, order: usize, records: Vec<CheckRecord>) -> Self {
        let count = |s: Status| records.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            total: records.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            budget_exceeded: count(Status::BudgetExceeded),
        };
        Report { schema_version: SCHEMA_VERSION, suite: Some(suite), seed, order, records, summary }
    }

    /// No record failed; budget-limited checks are listed but do not fail the run.
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn from_json(text: &str) -> CliResult<Report> {
        let report: Report = serde_json::from_str(text).map_err(|e| CliError::Serialize(e.to_string()))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(CliError::Serialize(format!(
                "schema version {} is not {SCHEMA_VERSION}",
                report.schema_version
            )));
        }
        Ok(report)
    }
}
