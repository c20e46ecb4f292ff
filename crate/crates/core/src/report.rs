//! Structured verification results.
//!
//! Every validator and claim verifier returns a [`Report`]: a list of named
//! [`Check`]s, each carrying the concrete tuples at which it failed. A check
//! holds exactly when it has no violations.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exactmath::Field;

/// Witness lists are capped in serialized output; `violations` keeps the true count.
pub const MAX_WITNESSES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The basis labels / tuple at which the check was evaluated.
    pub at: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub violations: usize,
    pub witnesses: Vec<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            holds: true,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn fail<S: ToString>(&mut self, at: impl IntoIterator<Item = S>, detail: impl Into<String>) {
        self.holds = false;
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                at: at.into_iter().map(|s| s.to_string()).collect(),
                detail: detail.into(),
            });
        }
    }

    /// A single yes/no check with one witness on failure.
    pub fn assert<S: ToString>(
        name: impl Into<String>,
        ok: bool,
        at: impl IntoIterator<Item = S>,
        detail: impl Into<String>,
    ) -> Self {
        let mut c = Check::new(name);
        if !ok {
            c.fail(at, detail);
        }
        c
    }

    pub fn has_witness(&self, at: &[&str]) -> bool {
        self.witnesses
            .iter()
            .any(|w| w.at.iter().map(String::as_str).eq(at.iter().copied()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub holds: bool,
    /// Set when the hypotheses of the verified statement are not met by the
    /// instance; checks are still evaluated and reported.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub conditional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
    /// Checks that are reported but do not decide `holds`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub dimensions: BTreeMap<String, usize>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            holds: true,
            conditional: false,
            field: None,
            notes: Vec::new(),
            checks: Vec::new(),
            observations: Vec::new(),
            dimensions: BTreeMap::new(),
        }
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = Some(field);
        self
    }

    pub fn push(&mut self, check: Check) {
        self.holds &= check.holds;
        self.checks.push(check);
    }

    pub fn observe(&mut self, check: Check) {
        self.observations.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn dim(&mut self, key: impl Into<String>, value: usize) {
        self.dimensions.insert(key.into(), value);
    }

    /// Appends all checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.push(c);
        }
        for mut c in other.observations {
            c.name = format!("{prefix}.{}", c.name);
            self.observe(c);
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().chain(&self.observations).find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.holds, self.conditional) {
            (true, false) => "HOLDS",
            (true, true) => "HOLDS (conditional)",
            (false, false) => "FAILS",
            (false, true) => "FAILS (conditional)",
        };
        writeln!(f, "{}: {verdict}", self.subject)?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for (k, v) in &self.dimensions {
            writeln!(f, "  dim {k} = {v}")?;
        }
        for (c, tag) in self
            .checks
            .iter()
            .map(|c| (c, ""))
            .chain(self.observations.iter().map(|c| (c, " (observation)")))
        {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            writeln!(f, "  [{mark}] {}{tag}", c.name)?;
            for w in &c.witnesses {
                writeln!(f, "         at ({}): {}", w.at.join(", "), w.detail)?;
            }
            if c.violations > c.witnesses.len() {
                writeln!(f, "         ... {} more", c.violations - c.witnesses.len())?;
            }
        }
        Ok(())
    }
}
