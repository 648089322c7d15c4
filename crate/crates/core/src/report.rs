//! Structured pass/fail records emitted by the verification suite.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verified statement: name, source anchor, outcome and a witness string
/// (the proportionality scalar, the offending difference, spot values, ...).
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub anchor: String,
    pub status: CheckStatus,
    pub witness: String,
    pub millis: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { checks: vec![] }
    }

    /// Run a check closure, timing it and folding an `Err` into a FAIL record.
    pub fn run<F>(&mut self, name: &str, anchor: &str, f: F)
    where
        F: FnOnce() -> crate::Result<String>,
    {
        let start = Instant::now();
        let (status, witness) = match f() {
            Ok(w) => (CheckStatus::Pass, w),
            Err(e) => (CheckStatus::Fail, e.to_string()),
        };
        self.checks.push(CheckReport {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status,
            witness,
            millis: start.elapsed().as_millis(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{:4} {:32} [{}] {} ({} ms)",
                status, c.name, c.anchor, c.witness, c.millis
            )?;
        }
        let overall = if self.all_passed() { "PASS" } else { "FAIL" };
        write!(f, "overall: {}", overall)
    }
}
