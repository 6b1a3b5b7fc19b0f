use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::SuiteConfig;
use super::serial::{AlgebraDoc, MapDoc, RejectionDoc};

/// Replayable evidence attached to a check. Failures always carry one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// A law failing on one or two recorded elements.
    Law {
        law: String,
        inputs: Vec<Vec<String>>,
    },
    /// Basis products that differ from the reference table.
    Table {
        mismatches: Vec<(usize, usize)>,
    },
    /// No verified automorphism agrees with `map` on `points`.
    PointWitness {
        map: MapDoc,
        points: Vec<Vec<String>>,
        error: String,
    },
    /// A map that should have been accepted or rejected by a predicate.
    Map {
        map: MapDoc,
        predicate: String,
    },
    Rejection {
        map: MapDoc,
        rejection: RejectionDoc,
    },
    Samples {
        pairs: Vec<[Vec<String>; 2]>,
        expected_consistent: bool,
    },
    Order {
        achieved: usize,
        expected: Option<u128>,
    },
    Note {
        text: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub evidence: Option<Evidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Everything needed to rerun a suite: the config, the algebra itself and
/// per-check verdicts. Wall-clock time is left to the caller so that equal
/// configs give byte-identical documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub algebra: AlgebraDoc,
    pub checks: Vec<Check>,
    pub totals: Totals,
}

impl Report {
    pub(crate) fn new(config: &SuiteConfig, algebra: AlgebraDoc, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Report {
            suite: config.suite.name().to_string(),
            config: config.clone(),
            algebra,
            totals: Totals {
                checks: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.totals.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "suite {} on {} (seed {})",
            self.suite, self.algebra.id, self.config.seed
        );
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{tag} {}: {}", c.name, c.detail);
            if !c.passed {
                if let Some(e) = &c.evidence {
                    let _ = writeln!(
                        s,
                        "  evidence: {}",
                        serde_json::to_string(e).expect("serialize")
                    );
                }
            }
        }
        let _ = writeln!(
            s,
            "{} checks, {} passed, {} failed",
            self.totals.checks, self.totals.passed, self.totals.failed
        );
        s
    }
}

pub(crate) fn pass(name: &str, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed: true,
        detail: detail.into(),
        evidence: None,
    }
}

pub(crate) fn fail(name: &str, detail: impl Into<String>, evidence: Evidence) -> Check {
    Check {
        name: name.to_string(),
        passed: false,
        detail: detail.into(),
        evidence: Some(evidence),
    }
}
