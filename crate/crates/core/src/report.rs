//! Pass/fail reports shared by every verification suite.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::Result;
use crate::oracle::{elements_residual, Window, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// One checked identity. `symbolic` and `oracle` hold the verdicts of the
/// two independent paths when they were run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    pub mode: Mode,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symbolic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Entry {
    /// An entry decided by a single boolean.
    pub fn check(name: impl Into<String>, ok: bool, residual: f64, mode: Mode) -> Self {
        Self {
            name: name.into(),
            lhs: String::new(),
            rhs: String::new(),
            status: if ok { Status::Pass } else { Status::Fail },
            mode,
            residual,
            symbolic: None,
            oracle: None,
            note: None,
        }
    }

    pub fn with_sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Compare two algebra elements symbolically (exact mode only) and on the
/// oracle window. The entry passes only when every path that ran agrees.
pub fn identity_entry(
    name: impl Into<String>,
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
    window: Option<Window>,
) -> Result<Entry> {
    let exact = !lhs.is_float() && !rhs.is_float();
    let symbolic = if exact { Some(lhs.equals(rhs)?) } else { None };
    let (residual, oracle) = match window {
        Some(w) => {
            let r = elements_residual(lhs, rhs, w, 1)?;
            (r, Some(r <= DEFAULT_TOL))
        }
        None => {
            let r = lhs.try_sub(rhs)?.max_abs_coeff();
            (r, None)
        }
    };
    let float_ok = exact || lhs.approx_eq(rhs, DEFAULT_TOL);
    let ok = symbolic.unwrap_or(true) && oracle.unwrap_or(true) && float_ok;
    Ok(Entry {
        name: name.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        mode: if exact { Mode::Exact } else { Mode::Float },
        residual,
        symbolic,
        oracle,
        note: None,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(Entry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Entries sorted by name.
    pub fn sorted(mut self) -> Self {
        self.entries.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for e in &self.entries {
            let tag = if e.passed() { "PASS" } else { "FAIL" };
            let mode = match e.mode {
                Mode::Exact => "exact",
                Mode::Float => "float",
            };
            write!(f, "  [{tag}] {} ({mode}, residual {:.3e})", e.name, e.residual)?;
            if let Some(n) = &e.note {
                write!(f, " {n}")?;
            }
            writeln!(f)?;
        }
        let passed = self.entries.iter().filter(|e| e.passed()).count();
        write!(f, "{passed}/{} passed", self.entries.len())
    }
}
