//! Check/report structures shared by the verifiers.
//!
//! Reports are deterministic: checks are pushed in a fixed enumeration order
//! and carry their witnesses as formatted text, so serialized reports are
//! byte-identical across runs and thread counts.

use crate::progressive::{EqStatus, EqualityCertificate};
use crate::sft::Sft;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Verified,
    Refuted,
    Undetermined,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Informational checks do not affect the aggregate verdict (used when a
    /// hypothesis such as essential freeness is not certified).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl Check {
    pub fn verified(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Verified,
            witness: None,
            informational: false,
        }
    }

    pub fn refuted(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Refuted,
            witness: Some(witness.into()),
            informational: false,
        }
    }

    pub fn undetermined(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Undetermined,
            witness: Some(witness.into()),
            informational: false,
        }
    }

    pub fn info(mut self) -> Check {
        self.informational = true;
        self
    }

    /// Translate a depth-bounded equality certificate, rendering the witness
    /// word with the labels of the space it lives in.
    pub fn from_certificate(
        name: impl Into<String>,
        cert: &EqualityCertificate,
        domain: &Sft,
    ) -> Check {
        match cert.status {
            EqStatus::VerifiedAtDepth => Check::verified(name),
            EqStatus::Refuted => Check::refuted(
                name,
                format!(
                    "word '{}' at depth {}",
                    domain.format_word(cert.witness.as_ref().expect("refutation has witness")),
                    cert.depth
                ),
            ),
            EqStatus::Undetermined => {
                Check::undetermined(name, format!("undecided at depth {}", cert.depth))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(kind: impl Into<String>) -> Report {
        Report {
            kind: kind.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// Aggregate verdict over the non-informational checks: refuted beats
    /// undetermined beats verified.
    pub fn status(&self) -> CheckStatus {
        let mut status = CheckStatus::Verified;
        for c in &self.checks {
            if c.informational {
                continue;
            }
            match c.status {
                CheckStatus::Refuted => return CheckStatus::Refuted,
                CheckStatus::Undetermined => status = CheckStatus::Undetermined,
                CheckStatus::Verified => {}
            }
        }
        status
    }

    pub fn passed(&self) -> bool {
        self.status() == CheckStatus::Verified
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| !c.informational && c.status != CheckStatus::Verified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregate_prefers_refutation() {
        let mut r = Report::new("test");
        r.push(Check::verified("a"));
        r.push(Check::undetermined("b", "shallow"));
        assert_eq!(r.status(), CheckStatus::Undetermined);
        r.push(Check::refuted("c", "w"));
        assert_eq!(r.status(), CheckStatus::Refuted);
    }

    #[test]
    fn informational_checks_do_not_fail_reports() {
        let mut r = Report::new("test");
        r.push(Check::refuted("hypothesis-gated", "w").info());
        assert!(r.passed());
    }
}
