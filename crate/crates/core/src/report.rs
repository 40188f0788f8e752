//! Pass/fail reports shared by the verification routines.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Named list of checks; passes when every check passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    /// Records an error as a failed check.
    pub fn fail(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.check(name, false, err.to_string());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.subject;
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}: {}", c.name);
            c
        }));
    }
}
