use serde::Serialize;

use ellhyp::battery::TimedReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Top-level JSON output of `verify`; the embedded config reproduces the run.
#[derive(Serialize)]
pub struct ReportDocument<C: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: C,
    pub reports: Vec<TimedReport>,
    pub summary: Summary,
    pub wall_seconds: f64,
}

impl<C: Serialize> ReportDocument<C> {
    pub fn new(config: C, reports: Vec<TimedReport>, wall_seconds: f64) -> Self {
        let passed = reports.iter().filter(|r| r.report.passed).count();
        let summary = Summary { total: reports.len(), passed, failed: reports.len() - passed };
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool: "ellhyp",
            version: env!("CARGO_PKG_VERSION"),
            config,
            reports,
            summary,
            wall_seconds,
        }
    }
}

/// Envelope for `eval`, `index` and `anomaly` records.
#[derive(Serialize)]
pub struct Record<C: Serialize, R: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: C,
    pub result: R,
}

impl<C: Serialize, R: Serialize> Record<C, R> {
    pub fn new(config: C, result: R) -> Self {
        Record { schema_version: SCHEMA_VERSION, tool: "ellhyp", version: env!("CARGO_PKG_VERSION"), config, result }
    }
}
