//! Per-check records shared by every verification suite.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A printed value that differs from the computed one, recorded without failing the suite.
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    pub residual: Vec<String>,
}

impl CheckRecord {
    /// Passes iff the residual is empty and `expected == computed`.
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        residual: Vec<String>,
    ) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        let verdict = if residual.is_empty() && expected == computed {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            expected,
            computed,
            verdict,
            residual,
        }
    }

    /// Shorthand for a check whose expected and computed values are both rendered by `Display`.
    pub fn compare<A: ToString, B: ToString>(name: &str, anchor: &str, expected: A, computed: B) -> Self {
        Self::new(name, anchor, expected.to_string(), computed.to_string(), Vec::new())
    }

    pub fn discrepancy(
        name: impl Into<String>,
        anchor: impl Into<String>,
        printed: impl Into<String>,
        computed: impl Into<String>,
        residual: Vec<String>,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            expected: printed.into(),
            computed: computed.into(),
            verdict: Verdict::Discrepancy,
            residual,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}
