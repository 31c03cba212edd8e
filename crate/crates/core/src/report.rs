//! Verification reports: named exact checks with a witness description.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement the check certifies.
    pub anchor: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(
        &mut self,
        name: &str,
        anchor: &str,
        pass: bool,
        witness: impl Into<String>,
    ) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass,
            witness: witness.into(),
        });
        pass
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// True iff every check passed. An empty report passes.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["pass"] = Value::Bool(self.pass());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_pass_is_conjunction() {
        let mut r = Report::new("t");
        assert!(r.pass());
        r.check("a", "x", true, "");
        assert!(r.pass());
        r.check("b", "y", false, "counterexample");
        assert!(!r.pass());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.to_json()["pass"], Value::Bool(false));
    }
}
