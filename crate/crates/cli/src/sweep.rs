//! Exhaustive checks over a sweep family of restricted presentations.

use std::fmt;
use std::str::FromStr;

use finalg::algebra::AlgebraError;
use finalg::fields::FiniteField;
use finalg::liestruct::{theorem_2_1_evaluate, theorem_2_2_evaluate, CondValue, Consistency, TheoremVerdict};
use finalg::restricted::{
    corollary_evaluate, lemma_3_2_check, lemma_3_5_witness_check, sweep_family, Corollary, Enveloping,
    RestrictedError, RestrictedLieAlgebra, SweepFamily,
};
use serde_json::{json, Value};

use crate::report::Outcome;
use crate::{parallel_map, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepCheck {
    Thm21,
    Thm22Class,
    Lemma32,
    Lemma35,
    Corollary(Corollary),
    Pbw,
    Radical,
}

impl SweepCheck {
    pub const ALL: [SweepCheck; 9] = [
        SweepCheck::Thm21,
        SweepCheck::Thm22Class,
        SweepCheck::Lemma32,
        SweepCheck::Lemma35,
        SweepCheck::Corollary(Corollary::SolvableUnits),
        SweepCheck::Corollary(Corollary::EngelUnits),
        SweepCheck::Corollary(Corollary::NilpotentUnits),
        SweepCheck::Pbw,
        SweepCheck::Radical,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SweepCheck::Thm21 => "thm2.1",
            SweepCheck::Thm22Class => "thm2.2-class",
            SweepCheck::Lemma32 => "lemma3.2",
            SweepCheck::Lemma35 => "lemma3.5",
            SweepCheck::Corollary(c) => c.id(),
            SweepCheck::Pbw => "pbw",
            SweepCheck::Radical => "radical",
        }
    }
}

impl fmt::Display for SweepCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SweepCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(c) = Corollary::parse(s) {
            return Ok(SweepCheck::Corollary(c));
        }
        SweepCheck::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| {
            let known: Vec<&str> = SweepCheck::ALL.iter().map(|c| c.id()).collect();
            format!("unknown sweep check '{s}' (known: {})", known.join(", "))
        })
    }
}

/// Result of one check on one presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub index: usize,
    pub outcome: Outcome,
    /// Outside the hypothesis, yet the equivalent conditions disagree.
    pub anomaly: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub family: SweepFamily,
    pub check: SweepCheck,
    pub instances: Vec<InstanceResult>,
}

impl SweepReport {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.instances.iter().filter(|r| r.outcome == outcome).count()
    }

    pub fn anomalies(&self) -> usize {
        self.instances.iter().filter(|r| r.anomaly).count()
    }

    /// Failures and anomalies with their presentations, then one summary line.
    pub fn lines(&self, presentations: &[RestrictedLieAlgebra<FiniteField>]) -> Vec<Value> {
        let mut out = Vec::new();
        for r in &self.instances {
            let kind = if r.outcome == Outcome::Fail {
                "inconsistency"
            } else if r.anomaly {
                "outside-hypothesis-anomaly"
            } else {
                continue;
            };
            out.push(json!({
                "kind": kind,
                "family": self.family.id(),
                "check": self.check.id(),
                "index": r.index,
                "outcome": r.outcome,
                "presentation": presentations[r.index].to_json(),
                "detail": r.detail,
            }));
        }
        out.push(json!({
            "kind": "summary",
            "family": self.family.id(),
            "check": self.check.id(),
            "total": self.instances.len(),
            "pass": self.count(Outcome::Pass),
            "fail": self.count(Outcome::Fail),
            "outside_hypothesis": self.count(Outcome::OutsideHypothesis),
            "skipped": self.count(Outcome::Skipped),
            "anomalies": self.anomalies(),
        }));
        out
    }
}

pub fn run_sweep(family: SweepFamily, check: SweepCheck, settings: &Settings) -> SweepReport {
    let presentations = sweep_family(family);
    run_on(family, check, &presentations, settings)
}

pub fn run_on(
    family: SweepFamily,
    check: SweepCheck,
    presentations: &[RestrictedLieAlgebra<FiniteField>],
    settings: &Settings,
) -> SweepReport {
    let instances = parallel_map(presentations, settings.jobs, |i, l| {
        let mut r = evaluate(l, check, settings);
        r.index = i;
        r
    });
    SweepReport { family, check, instances }
}

fn too_large(e: &RestrictedError) -> bool {
    matches!(e, RestrictedError::Algebra(AlgebraError::TooLarge { .. }))
}

fn from_error(e: &RestrictedError) -> InstanceResult {
    let outcome = if too_large(e) { Outcome::Skipped } else { Outcome::Fail };
    InstanceResult { index: 0, outcome, anomaly: false, detail: json!({ "error": e.to_string() }) }
}

fn from_verdict(v: &TheoremVerdict) -> InstanceResult {
    InstanceResult {
        index: 0,
        outcome: Outcome::from_consistency(v.consistency),
        anomaly: false,
        detail: serde_json::to_value(v).expect("verdicts serialize"),
    }
}

pub fn evaluate(l: &RestrictedLieAlgebra<FiniteField>, check: SweepCheck, settings: &Settings) -> InstanceResult {
    let u = match l.build_u() {
        Ok(u) => u,
        Err(e) => return from_error(&e),
    };
    let limits = &settings.limits;
    match check {
        SweepCheck::Thm21 => from_verdict(&theorem_2_1_evaluate(u.algebra(), None, limits)),
        SweepCheck::Thm22Class => {
            let v = theorem_2_2_evaluate(u.algebra(), limits);
            let mut r = from_verdict(&v);
            if v.value("thm2.2.cond5") == CondValue::False {
                r.outcome = Outcome::Fail;
            }
            r
        }
        SweepCheck::Lemma32 => match lemma_3_2_check(&u, limits) {
            Ok(v) => from_verdict(&v),
            Err(e) => from_error(&e),
        },
        SweepCheck::Lemma35 => lemma35_all_pairs(&u, settings),
        SweepCheck::Corollary(c) => {
            let v = corollary_evaluate(&u, c, limits);
            let mut r = from_verdict(&v);
            if v.consistency == Consistency::OutsideHypothesis {
                let values: Vec<Option<bool>> = v.conditions.iter().map(|c| c.value.as_bool()).collect();
                r.anomaly = values.iter().all(Option::is_some) && values.iter().any(|b| *b != values[0]);
            }
            r
        }
        SweepCheck::Pbw => pbw_certificate(l, &u),
        SweepCheck::Radical => {
            let alg = u.algebra();
            let fast = alg.radical().map(|r| r.radical);
            let brute = alg.radical_brute_oracle(limits.max_card);
            match (fast, brute) {
                (Ok(a), Ok(b)) => InstanceResult {
                    index: 0,
                    outcome: Outcome::from_bool(a == b),
                    anomaly: false,
                    detail: json!({ "radical_dim": a.dim(), "oracle_dim": b.dim() }),
                },
                (Err(e), _) | (_, Err(e)) => from_error(&RestrictedError::Algebra(e)),
            }
        }
    }
}

/// The `lemma3.5` witness check on every ordered pair of distinct basis vectors.
fn lemma35_all_pairs(u: &Enveloping<FiniteField>, settings: &Settings) -> InstanceResult {
    let n = u.lie().dim();
    let pairs: Vec<(usize, usize)> = if n == 1 {
        vec![(0, 0)]
    } else {
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
    };
    let mut outcomes = Vec::new();
    let mut details = Vec::new();
    for (i, j) in pairs {
        let r = match lemma_3_5_witness_check(u, i, j, &settings.limits) {
            Ok(v) => from_verdict(&v),
            Err(e) => from_error(&e),
        };
        outcomes.push(r.outcome);
        details.push(json!({ "x": i, "y": j, "outcome": r.outcome, "detail": r.detail }));
    }
    let outcome = [Outcome::Fail, Outcome::Skipped, Outcome::Pass]
        .into_iter()
        .find(|o| outcomes.contains(o))
        .unwrap_or(Outcome::OutsideHypothesis);
    InstanceResult { index: 0, outcome, anomaly: false, detail: json!({ "pairs": details }) }
}

/// `dim u(L) = p^{dim L}` and, for each basis vector, the associative image
/// of its p-polynomial equals its minimal polynomial in `u(L)`.
fn pbw_certificate(l: &RestrictedLieAlgebra<FiniteField>, u: &Enveloping<FiniteField>) -> InstanceResult {
    let p = l.characteristic() as usize;
    let expected = p.pow(l.dim() as u32);
    let alg = u.algebra();
    let mut mismatches = Vec::new();
    for i in 0..l.dim() {
        let v = l.basis_elem(i);
        match u.p_polynomial(&v) {
            Ok(pp) if pp.associative(l.field()) == alg.minimal_polynomial(&u.embed(&v)) => {}
            Ok(_) => mismatches.push(json!({ "basis": i })),
            Err(e) => mismatches.push(json!({ "basis": i, "error": e.to_string() })),
        }
    }
    InstanceResult {
        index: 0,
        outcome: Outcome::from_bool(alg.dim() == expected && mismatches.is_empty()),
        anomaly: false,
        detail: json!({ "u_dim": alg.dim(), "expected_dim": expected, "mismatches": mismatches }),
    }
}
