//! Verification reports shared by every suite.
//!
//! A report is a flat list of named checks. Asserted checks decide the
//! report's verdict; informational ones (printed forms known to be wrong,
//! oracle-determined closed forms) are carried along with their measured
//! deviation but never fail a run.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Entry {
    pub identity_name: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub samples: usize,
    /// Whether the check participates in the verdict.
    pub asserted: bool,
    /// Whether the measured deviation is within tolerance.
    pub holds: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_point: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Entry {
    pub fn new(name: impl Into<String>, tolerance: f64, asserted: bool) -> Self {
        Self {
            identity_name: name.into(),
            max_abs_error: 0.0,
            tolerance,
            samples: 0,
            asserted,
            holds: false,
            pass: false,
            worst_point: None,
            detail: None,
        }
    }

    /// Single-shot check with an already-measured deviation.
    pub fn measured(name: impl Into<String>, error: f64, tolerance: f64, asserted: bool) -> Self {
        let mut entry = Self::new(name, tolerance, asserted);
        entry.record(error, &[]);
        entry.finish()
    }

    /// Exact check: `error` is the size of the discrepancy, zero tolerance.
    pub fn exact(name: impl Into<String>, error: f64, asserted: bool) -> Self {
        Self::measured(name, error, 0.0, asserted)
    }

    /// Fold one sample into the running maximum. NaN counts as an
    /// unbounded error.
    pub fn record(&mut self, error: f64, point: &[f64]) {
        let error = if error.is_nan() { f64::INFINITY } else { error.abs() };
        if self.samples == 0 || error > self.max_abs_error {
            self.max_abs_error = error;
            if !point.is_empty() {
                self.worst_point = Some(point.to_vec());
            }
        }
        self.samples += 1;
    }

    pub fn finish(mut self) -> Self {
        self.holds = self.samples > 0 && self.max_abs_error <= self.tolerance;
        self.pass = self.holds || !self.asserted;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.detail = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub pass: bool,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            suite: suite.into(),
            pass: true,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, entry: Entry) {
        self.pass &= entry.pass;
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: Report) {
        for mut entry in other.entries {
            entry.identity_name = format!("{}: {}", other.suite, entry.identity_name);
            self.push(entry);
        }
    }

    pub fn failures(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.identity_name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let mut r = Report::new("t");
        r.push(Entry::measured("ok", 1e-9, 1e-8, true));
        r.push(Entry::measured("info", 1.0, 1e-8, false));
        assert!(r.pass);
        assert!(!r.entry("info").unwrap().holds);
        r.push(Entry::measured("bad", f64::NAN, 1e-8, true));
        assert!(!r.pass);
        assert_eq!(r.failures().len(), 1);
        assert_eq!(r.entry("bad").unwrap().max_abs_error, f64::INFINITY);
    }

    #[test]
    fn worst_point_tracks_maximum() {
        let mut e = Entry::new("x", 1.0, true);
        e.record(0.1, &[1.0]);
        e.record(0.5, &[2.0]);
        e.record(0.2, &[3.0]);
        let e = e.finish();
        assert_eq!(e.worst_point, Some(vec![2.0]));
        assert!(e.pass);
    }
}
