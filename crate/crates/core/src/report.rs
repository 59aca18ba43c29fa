//! Pass/fail check reports shared by the verification suites.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The question is open; neither outcome counts as a failure.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub tolerance: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Records an exact comparison.
    pub fn exact<T: PartialEq + fmt::Display>(&mut self, name: &str, lhs: T, rhs: T) -> bool {
        let ok = lhs == rhs;
        self.push(name, ok, lhs.to_string(), rhs.to_string(), None);
        ok
    }

    /// Records `|lhs - rhs| <= tol` (or `lhs <= rhs` style bounds via `ok`).
    pub fn approx(&mut self, name: &str, ok: bool, lhs: f64, rhs: f64, tol: f64) -> bool {
        self.push(name, ok, format!("{lhs:.3e}"), format!("{rhs:.3e}"), Some(tol));
        ok
    }

    pub fn push(&mut self, name: &str, ok: bool, lhs: String, rhs: String, tolerance: Option<f64>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { check: name.to_string(), status, lhs, rhs, tolerance });
    }

    pub fn undecided(&mut self, name: &str, lhs: String, rhs: String) {
        self.checks.push(Check { check: name.to_string(), status: Status::Undecided, lhs, rhs, tolerance: None });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Undecided => "open",
            };
            write!(f, "{tag} {}: {} vs {}", c.check, c.lhs, c.rhs)?;
            if let Some(t) = c.tolerance {
                write!(f, " (tol {t:e})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
