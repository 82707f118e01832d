//! Pass/fail records shared by the verification suites.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::affine_coinvariants::YVector;
use crate::scalars::format_scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub identity: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(identity: impl Into<String>, witness: Option<String>) -> Self {
        Check { identity: identity.into(), passed: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub generic: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>, generic: bool) -> Self {
        Report { subject: subject.into(), generic, checks: Vec::new() }
    }

    pub fn push(&mut self, identity: impl Into<String>, witness: Option<String>) {
        self.checks.push(Check::new(identity, witness));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} checks)", self.subject, self.checks.len())?;
        for c in &self.checks {
            write!(f, "  [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.identity)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// `c1·Y_.. + c2·Y_..`, or `0`.
pub fn format_vector(v: &YVector) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = v.iter().map(|(k, c)| format!("{}·{}", format_scalar(c), k)).collect();
    parts.join(" + ")
}

/// Witness string for two sparse vectors that should agree.
pub fn compare_vectors(context: &str, lhs: &YVector, rhs: &YVector) -> Option<String> {
    let clean = |v: &YVector| -> YVector { v.iter().filter(|(_, c)| !num::Zero::is_zero(*c)).map(|(k, c)| (k.clone(), c.clone())).collect() };
    let (l, r) = (clean(lhs), clean(rhs));
    (l != r).then(|| format!("{context}: lhs = {}, rhs = {}", format_vector(&l), format_vector(&r)))
}
