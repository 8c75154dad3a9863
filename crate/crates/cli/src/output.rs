//! Versioned report assembly and serialization.

use std::time::{Duration, SystemTime, UNIX_EPOCH};

use obstruction::report::{CheckRecord, Verdict};
use obstruction::suites::SuiteParams;
use serde::Serialize;

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub discrepancies: usize,
}

impl Summary {
    pub fn of(checks: &[CheckRecord]) -> Self {
        let count = |v| checks.iter().filter(|c| c.verdict == v).count();
        Summary {
            total: checks.len(),
            passed: count(Verdict::Pass),
            failed: count(Verdict::Fail),
            discrepancies: count(Verdict::Discrepancy),
        }
    }

    fn add(self, o: Summary) -> Summary {
        Summary {
            total: self.total + o.total,
            passed: self.passed + o.passed,
            failed: self.failed + o.failed,
            discrepancies: self.discrepancies + o.discrepancies,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckRecord>) -> Self {
        SuiteReport {
            suite: suite.into(),
            summary: Summary::of(&checks),
            checks,
        }
    }
}

/// The only fields that change between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct Timestamp {
    pub started_unix_ms: u128,
    pub wall_clock_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub toolkit_version: &'static str,
    pub suite: String,
    pub config: SuiteParams,
    pub summary: Summary,
    pub suites: Vec<SuiteReport>,
    pub timestamp: Timestamp,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: SuiteParams, suites: Vec<SuiteReport>, started: SystemTime, elapsed: Duration) -> Self {
        let summary = suites.iter().fold(Summary::default(), |acc, s| acc.add(s.summary));
        Report {
            schema_version: SCHEMA_VERSION,
            toolkit_version: obstruction::VERSION,
            suite: suite.into(),
            config,
            summary,
            suites,
            timestamp: Timestamp {
                started_unix_ms: started.duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0),
                wall_clock_ms: elapsed.as_millis(),
            },
        }
    }

    pub fn failed(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "obstruction {} · suite {} · p = {} · schema {}\n",
            self.toolkit_version, self.suite, self.config.p, self.schema_version
        );
        for suite in &self.suites {
            s.push_str(&format!("\n== {} ==\n", suite.suite));
            for c in &suite.checks {
                let tag = match c.verdict {
                    Verdict::Pass => "PASS",
                    Verdict::Fail => "FAIL",
                    Verdict::Discrepancy => "NOTE",
                };
                s.push_str(&format!("[{tag}] {}  ({})\n", c.name, c.anchor));
                if c.verdict != Verdict::Pass {
                    s.push_str(&format!("       expected: {}\n       computed: {}\n", c.expected, c.computed));
                    for r in &c.residual {
                        s.push_str(&format!("       residual: {r}\n"));
                    }
                }
            }
        }
        let m = self.summary;
        s.push_str(&format!(
            "\n{} checks: {} passed, {} failed, {} recorded discrepancies ({} ms)\n",
            m.total, m.passed, m.failed, m.discrepancies, self.timestamp.wall_clock_ms
        ));
        s
    }
}
