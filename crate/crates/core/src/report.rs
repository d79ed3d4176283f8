//! Pass/fail records produced by the verification suites.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified claim, optionally pinned to a root partition and a degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub alpha: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, alpha: impl ToString, ok: bool) -> Self {
        CheckRecord {
            check: check.into(),
            alpha: alpha.to_string(),
            pi: None,
            degree: None,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: None,
        }
    }

    pub fn pi(mut self, pi: impl ToString) -> Self {
        self.pi = Some(pi.to_string());
        self
    }

    pub fn degree(mut self, n: i64) -> Self {
        self.degree = Some(n);
        self
    }

    /// Attaches a witness, kept only for failures.
    pub fn witness_if_failed(mut self, witness: impl FnOnce() -> String) -> Self {
        if self.status == Status::Fail {
            self.witness = Some(witness());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{status} {} alpha={}", self.check, self.alpha)?;
        if let Some(pi) = &self.pi {
            write!(f, " pi={pi}")?;
        }
        if let Some(n) = self.degree {
            write!(f, " degree={n}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
    /// Observations that are not pass/fail claims.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    /// Sorts records so output does not depend on task completion order.
    pub fn sort(&mut self) {
        self.records.sort();
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.records).expect("records serialize")
    }
}

impl FromIterator<CheckRecord> for Report {
    fn from_iter<T: IntoIterator<Item = CheckRecord>>(iter: T) -> Self {
        Report { records: iter.into_iter().collect(), notes: Vec::new() }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.records.len(), failed)
    }
}
