//! Versioned JSON report emitted by the verification commands.
//!
//! Reports are fully deterministic: no timestamps, no paths, struct-order
//! fields and sorted maps, so identical config + seed yields byte-identical
//! output.

use serde::Serialize;

use crate::checks::GroupResult;

pub const SCHEMA: &str = "ghostw-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct OutcomeReport {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionsReport {
    pub center: usize,
    pub anticenter: usize,
    pub invariants_even: usize,
    pub invariants_odd: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub checks: Vec<OutcomeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<DimensionsReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub n: usize,
    pub max_degree: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<GroupReport>,
}

impl Report {
    pub fn new(
        command: String,
        n: usize,
        max_degree: usize,
        seed: u64,
        groups: Vec<GroupResult>,
    ) -> Report {
        let passed = groups.iter().all(GroupResult::passed);
        Report {
            schema: SCHEMA,
            command,
            n,
            max_degree,
            seed,
            passed,
            checks: groups.into_iter().map(GroupResult::into_report).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable one-line-per-check summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for group in &self.checks {
            for check in &group.checks {
                let tag = match check.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Info => "info",
                };
                out.push_str(&format!("[{tag}] {}/{}", group.group, check.name));
                if let Some(w) = &check.witness {
                    out.push_str(&format!(": {w}"));
                }
                out.push('\n');
            }
            if let Some(d) = &group.dimensions {
                out.push_str(&format!(
                    "       {} dimensions: center {}, anticenter {}, invariants {}+{}\n",
                    group.group, d.center, d.anticenter, d.invariants_even, d.invariants_odd
                ));
            }
        }
        out.push_str(if self.passed {
            "all checks passed\n"
        } else {
            "SOME CHECKS FAILED\n"
        });
        out
    }
}
