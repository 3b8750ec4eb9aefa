//! Clause-by-clause verification reports.

use std::fmt;

use crate::lattice::HClass;

/// One checked condition: a stable id, the verdict, the classes that witness
/// it (typically the offending ones) and a short explanation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub id: &'static str,
    pub passed: bool,
    pub witnesses: Vec<HClass>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub clauses: Vec<Clause>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: &'static str, passed: bool, witnesses: Vec<HClass>, detail: impl Into<String>) {
        self.clauses.push(Clause { id, passed, witnesses, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.passed)
    }

    /// First clause with the given id.
    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            write!(f, "{} {}", if c.passed { "pass" } else { "FAIL" }, c.id)?;
            if !c.witnesses.is_empty() {
                let w: Vec<String> = c.witnesses.iter().map(|w| w.to_string()).collect();
                write!(f, " [{}]", w.join("; "))?;
            }
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
