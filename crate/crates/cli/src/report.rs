//! One JSON line per check.

use finalg::algebra::AlgebraError;
use finalg::liestruct::{Consistency, TheoremVerdict};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    OutsideHypothesis,
    /// An enumeration bound was exceeded.
    Skipped,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::OutsideHypothesis => "outside-hypothesis",
            Outcome::Skipped => "skipped(TooLarge)",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn from_consistency(c: Consistency) -> Self {
        match c {
            Consistency::Consistent => Outcome::Pass,
            Consistency::Inconsistent => Outcome::Fail,
            Consistency::OutsideHypothesis => Outcome::OutsideHypothesis,
            Consistency::Undetermined => Outcome::Skipped,
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub scenario: String,
    pub check: String,
    pub outcome: Outcome,
    pub detail: Value,
}

impl CheckRecord {
    pub fn new(scenario: &str, check: &str, outcome: Outcome, detail: Value) -> Self {
        CheckRecord { scenario: scenario.to_string(), check: check.to_string(), outcome, detail }
    }

    pub fn check(scenario: &str, check: &str, ok: bool, detail: Value) -> Self {
        Self::new(scenario, check, Outcome::from_bool(ok), detail)
    }

    pub fn verdict(scenario: &str, check: &str, v: &TheoremVerdict) -> Self {
        let detail = serde_json::to_value(v).expect("verdicts serialize");
        Self::new(scenario, check, Outcome::from_consistency(v.consistency), detail)
    }

    /// A bound was hit; anything else is reported as a failure.
    pub fn error(scenario: &str, check: &str, err: &dyn std::fmt::Display, too_large: bool) -> Self {
        let outcome = if too_large { Outcome::Skipped } else { Outcome::Fail };
        Self::new(scenario, check, outcome, json!({ "error": err.to_string() }))
    }

    pub fn algebra_error(scenario: &str, check: &str, err: &AlgebraError) -> Self {
        Self::error(scenario, check, err, matches!(err, AlgebraError::TooLarge { .. }))
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Per-scenario outcome counts, in order of first appearance.
pub fn tsv_summary(records: &[CheckRecord]) -> String {
    let mut rows: Vec<(String, [usize; 4])> = Vec::new();
    for r in records {
        let idx = match rows.iter().position(|(s, _)| *s == r.scenario) {
            Some(i) => i,
            None => {
                rows.push((r.scenario.clone(), [0; 4]));
                rows.len() - 1
            }
        };
        let slot = match r.outcome {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::OutsideHypothesis => 2,
            Outcome::Skipped => 3,
        };
        rows[idx].1[slot] += 1;
    }
    let mut out = String::from("scenario\tpass\tfail\toutside_hypothesis\tskipped\n");
    for (s, c) in rows {
        out.push_str(&format!("{s}\t{}\t{}\t{}\t{}\n", c[0], c[1], c[2], c[3]));
    }
    out
}
