use std::fmt;

use serde::Serialize;

/// Outcome of one identity check, evaluated at each index of a range.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub entries: Vec<CheckEntry>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckEntry {
    pub index: u32,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    pub fn record(&mut self, index: u32, pass: bool) {
        self.entries.push(CheckEntry {
            index,
            pass,
            detail: None,
        });
    }

    pub fn record_with(&mut self, index: u32, pass: bool, detail: impl Into<String>) {
        self.entries.push(CheckEntry {
            index,
            pass,
            detail: Some(detail.into()),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.entries.iter().filter(|e| e.pass).count();
        write!(
            f,
            "{:<34} {:>4}/{:<4} {}",
            self.name,
            passed,
            self.entries.len(),
            if self.all_pass() { "PASS" } else { "FAIL" }
        )?;
        for e in self.failures() {
            write!(f, "\n    index {} failed", e.index)?;
            if let Some(d) = &e.detail {
                write!(f, ": {d}")?;
            }
        }
        Ok(())
    }
}
