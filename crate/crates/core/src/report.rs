use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An existential search that found nothing; never a refutation.
    Inconclusive,
}

/// Outcome of one verification, with a reproducible witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub checked: u64,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, checked: u64) -> Self {
        CheckReport { name: name.into(), status: Status::Pass, checked, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, checked: u64, witness: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Fail,
            checked,
            witness: Some(witness.into()),
            note: None,
        }
    }

    pub fn inconclusive(name: impl Into<String>, checked: u64, note: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Inconclusive,
            checked,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Pass if every report passed, otherwise the first failure.
    pub fn combine(name: impl Into<String>, reports: &[CheckReport]) -> Self {
        let name = name.into();
        let checked = reports.iter().map(|r| r.checked).sum();
        if let Some(bad) = reports.iter().find(|r| r.status == Status::Fail) {
            return CheckReport::fail(
                name,
                checked,
                format!("{}: {}", bad.name, bad.witness.clone().unwrap_or_default()),
            );
        }
        if let Some(inc) = reports.iter().find(|r| r.status == Status::Inconclusive) {
            return CheckReport::inconclusive(name, checked, format!("{}: {}", inc.name, inc.note.clone().unwrap_or_default()));
        }
        CheckReport::pass(name, checked)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "[{tag}] {} ({} checked)", self.name, self.checked)?;
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        if let Some(n) = &self.note {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}
