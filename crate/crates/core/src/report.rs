//! Check reports: every axiom checker returns an [`AxiomReport`] listing each
//! check it ran, with witness tuples for every failure it found.

use std::fmt;

/// Outcome of a single named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    /// Stable identifier, e.g. `"s4"` or `"cover.transitivity"`.
    pub id: String,
    pub pass: bool,
    /// One entry per violating instance, rendered as a tuple of element names.
    pub witnesses: Vec<String>,
    /// Optional annotation, e.g. `"verified-by-theorem+sample"`.
    pub note: Option<String>,
}

impl CheckResult {
    pub fn pass(id: &str) -> Self {
        CheckResult { id: id.to_string(), pass: true, witnesses: Vec::new(), note: None }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<CheckResult>,
}

impl AxiomReport {
    pub fn new() -> Self {
        AxiomReport { checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    /// Record the result of one check. `witnesses` empty means pass.
    pub fn record(&mut self, id: &str, witnesses: Vec<String>) {
        self.checks.push(CheckResult {
            id: id.to_string(),
            pass: witnesses.is_empty(),
            witnesses,
            note: None,
        });
    }

    pub fn record_note(&mut self, id: &str, witnesses: Vec<String>, note: &str) {
        self.checks.push(CheckResult {
            id: id.to_string(),
            pass: witnesses.is_empty(),
            witnesses,
            note: Some(note.to_string()),
        });
    }
}

/// Line-oriented rendering: `CHECK <id> PASS|FAIL [witness=<tuple>]`,
/// sorted by check id so output is deterministic.
impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<&CheckResult> = self.checks.iter().collect();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        for c in sorted {
            write!(f, "CHECK {} {}", c.id, if c.pass { "PASS" } else { "FAIL" })?;
            if let Some(w) = c.witnesses.first() {
                write!(f, " witness={w}")?;
            }
            if let Some(n) = &c.note {
                write!(f, " note={n}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
