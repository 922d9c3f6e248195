//! Check reports, rendered as `CHECK <name> PASS|FAIL <detail>` lines.

use std::fmt;

use serde::Serialize;

/// How many failing witnesses a check records before summarising.
pub(crate) const MAX_WITNESSES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "CHECK {} {}", self.name, status)
        } else {
            write!(f, "CHECK {} {} {}", self.name, status, self.detail)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, true, detail);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(name, false, detail);
    }

    /// Records the outcome of a witness collection.
    pub(crate) fn witnesses(&mut self, name: impl Into<String>, w: Witnesses, ok_detail: &str) {
        if w.count == 0 {
            self.pass(name, ok_detail);
        } else {
            self.fail(name, w.summary());
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Prefixes every check name with `prefix.`.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for c in &mut self.checks {
            c.name = format!("{prefix}.{}", c.name);
        }
        self
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Collects failing witnesses for one identity.
#[derive(Default)]
pub(crate) struct Witnesses {
    count: usize,
    shown: Vec<String>,
}

impl Witnesses {
    pub fn record(&mut self, w: impl FnOnce() -> String) {
        self.count += 1;
        if self.shown.len() < MAX_WITNESSES {
            self.shown.push(w());
        }
    }

    pub fn summary(&self) -> String {
        let more = self.count.saturating_sub(self.shown.len());
        let mut s = format!("{} violation(s): {}", self.count, self.shown.join("; "));
        if more > 0 {
            s.push_str(&format!("; ... {more} more"));
        }
        s
    }
}
