//! Pass/fail reports shared by every verification routine.
//!
//! A [`Report`] is an ordered list of [`Check`]s. Each check names the law it
//! exercises, how many instances it examined and, on failure, the first
//! witness found. Reports serialize to JSON deterministically.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub law: String,
    pub passed: bool,
    pub examined: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: &str, law: &str, examined: u64) -> Self {
        Check {
            name: name.to_string(),
            law: law.to_string(),
            passed: true,
            examined,
            witness: None,
            note: None,
        }
    }

    pub fn fail(name: &str, law: &str, examined: u64, witness: Value) -> Self {
        Check {
            name: name.to_string(),
            law: law.to_string(),
            passed: false,
            examined,
            witness: Some(witness),
            note: None,
        }
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(name: &str, law: &str, examined: u64, witness: Option<Value>) -> Self {
        match witness {
            None => Check::pass(name, law, examined),
            Some(w) => Check::fail(name, law, examined, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}
