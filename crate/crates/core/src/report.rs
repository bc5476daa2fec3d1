//! Outcome records shared by the identity and Jacobi verifiers.

use std::fmt;

use serde::Serialize;

/// Result of one exact comparison. Fields are declared in alphabetical
/// order so the JSON form has a canonical key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Constant in the printed orientation (`LHS = constant · det`), for catalog ids.
    pub constant: Option<String>,
    /// First exponent (in the compared variable) where the two sides differ.
    pub first_mismatch: Option<usize>,
    pub id: String,
    /// Informational results never affect the exit status.
    pub informational: bool,
    pub mode: String,
    pub note: Option<String>,
    /// Number of coefficients compared, for series comparisons.
    pub order: Option<usize>,
    pub pass: bool,
    /// Weight of the compared forms, for symbolic comparisons.
    pub weight: Option<u32>,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>, mode: impl Into<String>, pass: bool) -> Self {
        VerificationReport {
            constant: None,
            first_mismatch: None,
            id: id.into(),
            informational: false,
            mode: mode.into(),
            note: None,
            order: None,
            pass,
            weight: None,
        }
    }

    /// Report of a series comparison; passes iff `first_mismatch` is `None`.
    pub fn series(id: impl Into<String>, mode: impl Into<String>, order: usize, first_mismatch: Option<usize>) -> Self {
        let mut r = VerificationReport::new(id, mode, first_mismatch.is_none());
        r.order = Some(order);
        r.first_mismatch = first_mismatch;
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    /// Whether this report should make a batch run fail.
    pub fn is_failure(&self) -> bool {
        !self.pass && !self.informational
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.pass, self.informational) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (informational)",
        };
        write!(f, "{:<12} {:<10} {status}", self.id, self.mode)?;
        if let Some(n) = self.order {
            write!(f, "  order {n}")?;
        }
        if let Some(w) = self.weight {
            write!(f, "  weight {w}")?;
        }
        if let Some(i) = self.first_mismatch {
            write!(f, "  first mismatch at exponent {i}")?;
        }
        if let Some(c) = &self.constant {
            write!(f, "  constant {c}")?;
        }
        if let Some(n) = &self.note {
            write!(f, "  ({n})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted() {
        let r = VerificationReport::series("2.6", "series", 64, None);
        let json = serde_json::to_string(&r).unwrap();
        let keys: Vec<&str> = json
            .split('"')
            .enumerate()
            .filter(|(i, _)| i % 2 == 1)
            .map(|(_, s)| s)
            .filter(|s| s.chars().all(|c| c.is_ascii_lowercase() || c == '_'))
            .filter(|s| !["series"].contains(s))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert!(r.pass);
    }

    #[test]
    fn informational_failures_do_not_count() {
        let r = VerificationReport::series("3.8:printed", "series", 40, Some(3));
        assert!(r.is_failure());
        assert!(!r.clone().informational().is_failure());
        assert!(r.to_string().contains("first mismatch at exponent 3"));
    }
}
