//! Check reports: what was tested, under which truncation, and what failed.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

/// At most this many failures are kept verbatim; the rest are only counted.
pub const MAX_STORED_FAILURES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailureKind {
    InclusionFailure,
    AssociativityFailure,
    HomomorphismFailure,
    MetricFailure,
    ConfluenceFailure,
    ShapeViolation,
    Mismatch,
    NotFound,
}

impl FailureKind {
    pub fn code(self) -> &'static str {
        match self {
            FailureKind::InclusionFailure => "INCLUSION_FAILURE",
            FailureKind::AssociativityFailure => "ASSOCIATIVITY_FAILURE",
            FailureKind::HomomorphismFailure => "HOMOMORPHISM_FAILURE",
            FailureKind::MetricFailure => "METRIC_FAILURE",
            FailureKind::ConfluenceFailure => "CONFLUENCE_FAILURE",
            FailureKind::ShapeViolation => "SHAPE_VIOLATION",
            FailureKind::Mismatch => "MISMATCH",
            FailureKind::NotFound => "NOT_FOUND",
        }
    }
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub detail: String,
}

impl Failure {
    pub fn new(kind: FailureKind, detail: impl Into<String>) -> Self {
        Failure { kind, detail: detail.into() }
    }
}

/// Counts plus a capped list of failures; merged associatively across workers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub tested: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl Tally {
    pub fn push(&mut self, f: Failure) {
        self.failure_count += 1;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(f);
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.failure_count += other.failure_count;
        let room = MAX_STORED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{check}: {count} failure(s), first: {first}")]
pub struct CheckError {
    pub check: String,
    pub count: u64,
    pub first: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub convention_notes: Vec<String>,
    pub items_tested: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            params: BTreeMap::new(),
            convention_notes: Vec::new(),
            items_tested: 0,
            failure_count: 0,
            failures: Vec::new(),
            vacuous: false,
            warnings: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.convention_notes.push(note.into());
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), to_value(value));
    }

    pub fn warn(&mut self, warning: impl Into<String>) {
        self.warnings.push(warning.into());
    }

    pub fn fail(&mut self, kind: FailureKind, detail: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(Failure::new(kind, detail));
        }
    }

    /// Add `tested` items and any failures found while testing them.
    pub fn record(&mut self, tested: u64, failures: impl IntoIterator<Item = Failure>) {
        self.items_tested += tested;
        for f in failures {
            self.fail(f.kind, f.detail);
        }
    }

    pub fn add_tally(&mut self, t: Tally) {
        self.items_tested += t.tested;
        self.failure_count += t.failure_count;
        let room = MAX_STORED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(t.failures.into_iter().take(room));
    }

    /// Sets the vacuous flag when nothing was tested.
    pub fn finish(mut self) -> Self {
        self.vacuous = self.items_tested == 0;
        self
    }

    pub fn ok(&self) -> bool {
        self.failure_count == 0
    }

    pub fn into_result(self) -> Result<Report, CheckError> {
        if self.ok() {
            Ok(self)
        } else {
            Err(CheckError {
                first: self.failures.first().map(|f| format!("{}: {}", f.kind, f.detail)).unwrap_or_default(),
                check: self.check,
                count: self.failure_count,
            })
        }
    }

    /// Fold a sub-report in: counts add, failures and notes accumulate.
    pub fn absorb(&mut self, other: Report) {
        self.items_tested += other.items_tested;
        for f in other.failures {
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
        self.failure_count += other.failure_count;
        for n in other.convention_notes {
            if !self.convention_notes.contains(&n) {
                self.convention_notes.push(n);
            }
        }
        self.warnings.extend(other.warnings);
    }

    /// One line for text output.
    pub fn summary_line(&self) -> String {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} items={} failures={}", self.check, self.items_tested, self.failure_count);
        if self.vacuous {
            line.push_str(" (vacuous)");
        }
        if let Some(f) = self.failures.first() {
            line.push_str(&format!(" first={}: {}", f.kind, f.detail));
        }
        line
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_capped_but_counted() {
        let mut r = Report::new("t");
        for i in 0..(MAX_STORED_FAILURES + 10) {
            r.fail(FailureKind::Mismatch, i.to_string());
        }
        assert_eq!(r.failures.len(), MAX_STORED_FAILURES);
        assert_eq!(r.failure_count, (MAX_STORED_FAILURES + 10) as u64);
        let err = r.into_result().unwrap_err();
        assert_eq!(err.first, "MISMATCH: 0");
    }

    #[test]
    fn empty_report_is_vacuous_and_ok() {
        let r = Report::new("t").finish();
        assert!(r.vacuous && r.ok());
        let json = serde_json::to_value(&r).unwrap();
        for key in ["check", "params", "convention_notes", "items_tested", "failures", "vacuous"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn kinds_serialize_as_codes() {
        let v = serde_json::to_value(Failure::new(FailureKind::InclusionFailure, "x")).unwrap();
        assert_eq!(v["kind"], "INCLUSION_FAILURE");
    }
}
