//! JSON report.

use serde::Serialize;

use crate::runner::TaskResult;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub name: String,
    pub verdict: String,
    pub max_violation: f64,
    pub paper_ref: String,
    pub ms: f64,
    pub expect: String,
    pub grid: usize,
    pub tol: f64,
    pub provenance: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub infeasible: usize,
    pub unexpected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(results: &[TaskResult]) -> Report {
        let mut summary = Summary { total: results.len(), ..Summary::default() };
        let tasks = results
            .iter()
            .map(|r| {
                match r.verdict() {
                    dirfib_core::Verdict::Pass => summary.pass += 1,
                    dirfib_core::Verdict::Fail => summary.fail += 1,
                    dirfib_core::Verdict::Infeasible => summary.infeasible += 1,
                }
                if !r.as_expected() {
                    summary.unexpected += 1;
                }
                TaskReport {
                    name: r.name.clone(),
                    verdict: r.verdict().as_str().to_string(),
                    max_violation: r.certificate.max_violation,
                    paper_ref: r.tag.to_string(),
                    ms: r.ms,
                    expect: r.expect.as_str().to_string(),
                    grid: r.grid,
                    tol: r.tol,
                    provenance: r.provenance.clone(),
                }
            })
            .collect();
        Report { version: REPORT_VERSION, tasks, summary }
    }

    pub fn all_expected(&self) -> bool {
        self.summary.unexpected == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with timing fields zeroed, for comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for t in &mut r.tasks {
            t.ms = 0.0;
        }
        r
    }
}
