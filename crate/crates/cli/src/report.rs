use std::collections::BTreeMap;
use std::fmt::Write as _;

use clusterlab_core::MutationPath;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No failure, but limits stopped the check short of its statement.
    Partial,
    /// Precondition of the statement not met; does not affect the exit code.
    Skipped,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Pass | Self::Skipped => 0,
            Self::Fail => 1,
            Self::Partial => 3,
        }
    }

    fn severity(self) -> u8 {
        match self {
            Self::Pass | Self::Skipped => 0,
            Self::Partial => 1,
            Self::Fail => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub status: Status,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckEntry {
    pub fn pass(checked: usize) -> Self {
        Self { status: Status::Pass, checked, witness: None, detail: None }
    }

    pub fn fail(checked: usize, witness: Option<&MutationPath>, detail: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            checked,
            witness: witness.map(MutationPath::one_based),
            detail: Some(detail.into()),
        }
    }

    pub fn partial(checked: usize, detail: impl Into<String>) -> Self {
        Self { status: Status::Partial, checked, witness: None, detail: Some(detail.into()) }
    }

    pub fn skipped(detail: impl Into<String>) -> Self {
        Self { status: Status::Skipped, checked: 0, witness: None, detail: Some(detail.into()) }
    }

    /// Pass, or fail at `failure`.
    pub fn outcome(checked: usize, failure: Option<&MutationPath>, detail: &str) -> Self {
        match failure {
            None => Self::pass(checked),
            Some(p) => Self::fail(checked, Some(p), detail),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_depth: Option<usize>,
    pub checks: BTreeMap<String, CheckEntry>,
    /// Lexicographically least failing witness path.
    pub failure: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub properties: BTreeMap<String, Value>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            status: Status::Pass,
            verified_depth: None,
            checks: BTreeMap::new(),
            failure: None,
            properties: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: &str, entry: CheckEntry) {
        self.checks.insert(name.to_string(), entry);
        self.refresh();
    }

    pub fn property(&mut self, name: &str, value: impl Into<Value>) {
        self.properties.insert(name.to_string(), value.into());
    }

    pub fn timing(&mut self, name: &str, started: std::time::Instant) {
        self.timings_ms.insert(name.to_string(), started.elapsed().as_millis() as u64);
    }

    fn refresh(&mut self) {
        self.status = self.checks.values().map(|c| c.status).max_by_key(|s| s.severity()).unwrap_or(Status::Pass);
        if self.status == Status::Skipped {
            self.status = Status::Pass;
        }
        self.failure =
            self.checks.values().filter(|c| c.status == Status::Fail).filter_map(|c| c.witness.clone()).min();
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, status_word(self.status));
        if let Some(d) = self.verified_depth {
            let _ = writeln!(out, "verified depth: {d}");
        }
        for (name, c) in &self.checks {
            let _ = write!(out, "  {name}: {} ({} checked)", status_word(c.status), c.checked);
            if let Some(w) = &c.witness {
                let _ = write!(out, " at {w:?}");
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        for (name, v) in &self.properties {
            let _ = writeln!(out, "  {name} = {v}");
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Partial => "partial",
        Status::Skipped => "skipped",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_witness_and_worst_status() {
        let mut r = Report::new("t");
        r.check("a", CheckEntry::partial(3, "truncated"));
        assert_eq!(r.exit_code(), 3);
        r.check("b", CheckEntry::fail(1, Some(&MutationPath::from_zero_based(vec![1, 0])), "x"));
        r.check("c", CheckEntry::fail(1, Some(&MutationPath::from_zero_based(vec![0, 2, 2])), "y"));
        r.check("d", CheckEntry::skipped("even rank"));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failure, Some(vec![1, 3, 3]));
        assert!(r.to_text().contains("b: FAIL (1 checked) at [2, 1]: x"));
    }
}
