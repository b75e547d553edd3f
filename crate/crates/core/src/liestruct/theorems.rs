//! Evaluators that compute every condition of a unit-group theorem on a
//! concrete algebra and report whether the claimed equivalence holds there.

use std::sync::Arc;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use super::{algebra_engel_length, is_lie_nilpotent, lie_derived_series, zn_decomposition_check};
use crate::algebra::{Algebra, AlgebraError, MAX_UNIT_SCAN};
use crate::fields::Field;
use crate::linalg::Subspace;
use crate::unitgroup::{EngelLength, UnitGroup, DEFAULT_ENGEL_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Enumeration bounds shared by the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest algebra scanned element by element.
    pub max_card: u64,
    pub engel_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_card: 1 << 16, engel_cap: DEFAULT_ENGEL_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondValue {
    True,
    False,
    /// A bound was exceeded or an input was missing.
    Unevaluated,
    NotWithinCap,
    /// The condition only makes sense when another one holds.
    NotApplicable,
}

impl CondValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            CondValue::True
        } else {
            CondValue::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            CondValue::True => Some(true),
            CondValue::False => Some(false),
            _ => None,
        }
    }
}

impl Serialize for CondValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CondValue::True => s.serialize_bool(true),
            CondValue::False => s.serialize_bool(false),
            CondValue::Unevaluated => s.serialize_str("unevaluated"),
            CondValue::NotWithinCap => s.serialize_str("not_within_cap"),
            CondValue::NotApplicable => s.serialize_str("not_applicable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub value: CondValue,
    pub detail: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Consistency {
    Consistent,
    Inconsistent,
    /// The instance violates the theorem's hypotheses; conditions are still
    /// reported.
    OutsideHypothesis,
    /// Some condition needed for the verdict was not evaluated.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub hypothesis_holds: bool,
    pub hypothesis_notes: Vec<String>,
    pub conditions: Vec<Condition>,
    pub consistency: Consistency,
}

impl TheoremVerdict {
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn value(&self, name: &str) -> CondValue {
        self.condition(name).map_or(CondValue::Unevaluated, |c| c.value)
    }

    /// Consistency from a list of requirements: any `Some(false)` refutes,
    /// any `None` leaves the verdict open.
    pub(crate) fn settle(hypothesis_holds: bool, requirements: &[Option<bool>]) -> Consistency {
        if !hypothesis_holds {
            Consistency::OutsideHypothesis
        } else if requirements.contains(&Some(false)) {
            Consistency::Inconsistent
        } else if requirements.contains(&None) {
            Consistency::Undetermined
        } else {
            Consistency::Consistent
        }
    }
}

pub(crate) fn cond(name: &str, value: CondValue, detail: Value) -> Condition {
    Condition { name: name.to_string(), value, detail }
}

pub(crate) fn unevaluated(name: &str, err: &AlgebraError) -> Condition {
    cond(name, CondValue::Unevaluated, json!({ "reason": err.to_string() }))
}

/// Kleene conjunction.
pub(crate) fn and3(values: &[Option<bool>]) -> Option<bool> {
    if values.contains(&Some(false)) {
        Some(false)
    } else if values.contains(&None) {
        None
    } else {
        Some(true)
    }
}

pub(crate) fn units<F: Field>(alg: &Algebra<F>, limits: &Limits) -> Result<UnitGroup<F>, AlgebraError> {
    UnitGroup::enumerate(Arc::new(alg.clone()), limits.max_card.min(MAX_UNIT_SCAN))
}

/// A chain `0 = J_0 <= ... <= J_m = J(A)` together with, for each factor
/// `J_i / J_{i-1}`, subspaces `W` whose images `W + J_{i-1}` are claimed to
/// be commutative ideals of `J / J_{i-1}` summing to `J_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thm21Witness<E> {
    pub chain: Vec<Subspace<E>>,
    pub factors: Vec<Vec<Subspace<E>>>,
}

impl<E: Clone + PartialEq> Thm21Witness<E> {
    /// `0 <= J` with the single witness `J`, for algebras whose radical is
    /// commutative.
    pub fn single_step(radical: &Subspace<E>) -> Self {
        Thm21Witness {
            chain: vec![Subspace::zero(radical.ambient_dim()), radical.clone()],
            factors: vec![vec![radical.clone()]],
        }
    }
}

/// Returns the first failed requirement of the chain witness.
fn verify_chain<F: Field>(
    alg: &Algebra<F>,
    radical: &Subspace<F::Elem>,
    w: &Thm21Witness<F::Elem>,
) -> Result<(), String> {
    let f = alg.field();
    let sub = |a: &Subspace<F::Elem>, b: &Subspace<F::Elem>| a.is_subspace_of(f, b);
    let same = |a: &Subspace<F::Elem>, b: &Subspace<F::Elem>| sub(a, b) && sub(b, a);
    let absorbs = |i: &Subspace<F::Elem>| sub(&alg.product(radical, i), i) && sub(&alg.product(i, radical), i);
    let (first, last) = match (w.chain.first(), w.chain.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err("empty chain".into()),
    };
    if !first.is_zero() {
        return Err("chain does not start at 0".into());
    }
    if !same(last, radical) {
        return Err("chain does not end at the radical".into());
    }
    if w.factors.len() + 1 != w.chain.len() {
        return Err("one witness list per factor is required".into());
    }
    for (i, pair) in w.chain.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        if !sub(lower, upper) {
            return Err(format!("J_{} is not contained in J_{}", i, i + 1));
        }
        if !absorbs(upper) {
            return Err(format!("J_{} is not an ideal of the radical", i + 1));
        }
        let mut total = lower.clone();
        for (k, wit) in w.factors[i].iter().enumerate() {
            let image = wit.sum(f, lower).map_err(|e| e.to_string())?;
            if !sub(&image, upper) {
                return Err(format!("witness {k} of factor {} leaves J_{}", i + 1, i + 1));
            }
            if !absorbs(&image) {
                return Err(format!("witness {k} of factor {} is not an ideal", i + 1));
            }
            if !sub(&alg.bracket_space(&image, &image), lower) {
                return Err(format!("witness {k} of factor {} is not commutative", i + 1));
            }
            total = total.sum(f, &image).map_err(|e| e.to_string())?;
        }
        if !same(&total, upper) {
            return Err(format!("witnesses of factor {} do not sum to J_{}", i + 1, i + 1));
        }
    }
    Ok(())
}

/// Units solvable vs. Lie solvable, `A/J` commutative and an optional chain
/// witness. Checked against the equivalence only when `|F| >= 4`.
pub fn theorem_2_1_evaluate<F: Field>(
    alg: &Algebra<F>,
    witness: Option<&Thm21Witness<F::Elem>>,
    limits: &Limits,
) -> TheoremVerdict {
    let f = alg.field();
    let mut notes = Vec::new();
    let hypothesis_holds = match f.order() {
        Some(q) if q < 4 => {
            notes.push(format!("|F| = {q} < 4"));
            false
        }
        _ => true,
    };
    let mut conditions = Vec::new();

    conditions.push(match units(alg, limits) {
        Ok(g) => {
            let series = g.derived_series();
            let (solvable, length) = g.is_solvable();
            let orders: Vec<usize> = series.iter().map(|h| h.order()).collect();
            cond(
                "thm2.1.cond1",
                CondValue::from_bool(solvable),
                json!({ "unit_group_order": g.order(), "derived_series_orders": orders, "derived_length": length }),
            )
        }
        Err(e) => unevaluated("thm2.1.cond1", &e),
    });

    let lie = lie_derived_series(alg, &alg.full_space());
    conditions.push(cond(
        "thm2.1.cond2",
        CondValue::from_bool(lie.reaches_zero()),
        json!({ "derived_series_dims": lie.sizes, "derived_length": lie.length_or_class }),
    ));

    let radical = alg.radical().map(|r| r.radical);
    conditions.push(match &radical {
        Ok(j) => {
            let commutators = alg.bracket_space(&alg.full_space(), &alg.full_space());
            let commutative = commutators.is_subspace_of(f, j);
            cond("thm2.1.cond3", CondValue::from_bool(commutative), json!({ "radical_dim": j.dim() }))
        }
        Err(e) => unevaluated("thm2.1.cond3", e),
    });

    conditions.push(match (witness, &radical) {
        (None, _) => cond("thm2.1.cond4", CondValue::Unevaluated, json!({ "reason": "no chain witness supplied" })),
        (Some(_), Err(e)) => unevaluated("thm2.1.cond4", e),
        (Some(w), Ok(j)) => match verify_chain(alg, j, w) {
            Ok(()) => cond("thm2.1.cond4", CondValue::True, json!({ "chain_length": w.chain.len() - 1 })),
            Err(msg) => cond("thm2.1.cond4", CondValue::False, json!({ "failure": msg })),
        },
    });

    let v: Vec<Option<bool>> = conditions.iter().map(|c| c.value.as_bool()).collect();
    let requirement = match v[0] {
        None => None,
        // a failing witness does not rule out some other chain
        Some(true) if v[3] == Some(false) => and3(&[v[1], v[2]]).and_then(|b| if b { None } else { Some(false) }),
        Some(lhs) => and3(&v[1..]).map(|rhs| lhs == rhs),
    };
    let consistency = TheoremVerdict::settle(hypothesis_holds, &[requirement]);
    TheoremVerdict { theorem: "thm2.1".into(), hypothesis_holds, hypothesis_notes: notes, conditions, consistency }
}

/// Bounded Engel and nilpotency of `A^x` against the same properties of
/// `A` as a Lie algebra, with class comparison and the `Z + N` check.
pub fn theorem_2_2_evaluate<F: Field>(alg: &Algebra<F>, limits: &Limits) -> TheoremVerdict {
    let f = alg.field();
    let mut notes = Vec::new();
    if !f.is_perfect() {
        notes.push("field is not perfect".to_string());
    }
    if f.order() == Some(2) {
        notes.push("F = F_2".to_string());
    }
    let hypothesis_holds = notes.is_empty();
    let full = alg.full_space();
    let mut conditions = Vec::new();

    let group = units(alg, limits);
    let engel = group.as_ref().map(|g| g.engel_report(limits.engel_cap));
    match &engel {
        Ok(r) => {
            conditions.push(cond(
                "thm2.2.cond1",
                CondValue::from_bool(r.engel),
                json!({ "unit_group_order": group.as_ref().unwrap().order(), "min_engel_length": r.min_length }),
            ));
        }
        Err(e) => conditions.push(unevaluated("thm2.2.cond1", e)),
    }

    conditions.push(match algebra_engel_length(alg, &full, limits.engel_cap) {
        Ok(Some(EngelLength::Exact(n))) => cond("thm2.2.cond2", CondValue::True, json!({ "min_engel_length": n })),
        Ok(Some(_)) => cond("thm2.2.cond2", CondValue::NotWithinCap, json!({ "engel_cap": limits.engel_cap })),
        Ok(None) => cond("thm2.2.cond2", CondValue::False, json!({ "reason": "some ad y is not nilpotent" })),
        Err(e) => unevaluated("thm2.2.cond2", &e),
    });

    let group_class = match &engel {
        Ok(r) => {
            conditions.push(cond(
                "thm2.2.cond3",
                CondValue::from_bool(r.engel),
                json!({ "nilpotency_class": r.nilpotency_class }),
            ));
            Some(r.nilpotency_class)
        }
        Err(e) => {
            conditions.push(unevaluated("thm2.2.cond3", e));
            None
        }
    };

    let (lie_nilpotent, lie_class) = is_lie_nilpotent(alg);
    conditions.push(cond(
        "thm2.2.cond4",
        CondValue::from_bool(lie_nilpotent),
        json!({ "nilpotency_class": lie_class }),
    ));

    conditions.push(match group_class {
        None => cond("thm2.2.cond5", CondValue::Unevaluated, json!({ "reason": "unit group not enumerated" })),
        Some(Some(gc)) if lie_nilpotent => cond(
            "thm2.2.cond5",
            CondValue::from_bool(Some(gc) == lie_class),
            json!({ "group_class": gc, "lie_class": lie_class }),
        ),
        Some(_) => cond("thm2.2.cond5", CondValue::NotApplicable, json!({ "reason": "not both nilpotent" })),
    });

    conditions.push(match conditions[0].value {
        CondValue::True => match zn_decomposition_check(alg, limits.max_card) {
            Ok(r) => cond(
                "thm2.2.zn",
                CondValue::from_bool(r.holds()),
                json!({
                    "nilpotent_set_is_ideal": r.is_ideal,
                    "center_plus_nilpotents_is_a": r.center_plus_span_is_a,
                }),
            ),
            Err(e) => unevaluated("thm2.2.zn", &e),
        },
        _ => cond("thm2.2.zn", CondValue::NotApplicable, json!({ "reason": "unit group not bounded Engel" })),
    });

    let v = |i: usize| conditions[i].value.as_bool();
    let iff = |a: Option<bool>, b: Option<bool>| a.zip(b).map(|(x, y)| x == y);
    let mut requirements = vec![iff(v(0), v(1)), iff(v(2), v(3))];
    if conditions[4].value != CondValue::NotApplicable {
        requirements.push(v(4));
    }
    if conditions[5].value != CondValue::NotApplicable {
        requirements.push(v(5));
    }
    let consistency = TheoremVerdict::settle(hypothesis_holds, &requirements);
    TheoremVerdict { theorem: "thm2.2".into(), hypothesis_holds, hypothesis_notes: notes, conditions, consistency }
}

/// Lie closure of `gens`: the smallest subspace containing them and closed
/// under brackets.
pub fn lie_closure<F: Field>(alg: &Algebra<F>, gens: &[Vec<F::Elem>]) -> Subspace<F::Elem> {
    let f = alg.field();
    let mut space = Subspace::zero(alg.dim());
    let mut done: Vec<Vec<F::Elem>> = Vec::new();
    let mut work: Vec<Vec<F::Elem>> = gens.iter().filter(|g| space.insert(f, g)).cloned().collect();
    while let Some(v) = work.pop() {
        let brackets: Vec<Vec<F::Elem>> = done.iter().map(|w| alg.bracket(&v, w)).collect();
        done.push(v);
        for b in brackets {
            if space.insert(f, &b) {
                work.push(b);
            }
        }
    }
    space
}

/// For a nil Lie set `L` in an algebra whose unit group is solvable or
/// bounded Engel, reports whether the associative subalgebra generated by
/// `L` is nilpotent.
pub fn theorem_2_4_evaluate<F: Field>(
    alg: &Algebra<F>,
    lie_gens: &[Vec<F::Elem>],
    limits: &Limits,
) -> Result<TheoremVerdict, TheoremError> {
    let f = alg.field();
    let l = lie_closure(alg, lie_gens);
    let mut nil_checked = l.dim() as u64;
    if !l.basis().iter().all(|b| alg.is_nilpotent_elem(b)) {
        return Err(TheoremError::HypothesisFailed("the Lie set contains a non-nilpotent element".into()));
    }
    if let Some(card) = f.order().and_then(|q| q.checked_pow(l.dim() as u32)).filter(|&c| c <= limits.max_card) {
        let elems = super::domain_elements(alg, &l);
        if !elems.iter().all(|x| alg.is_nilpotent_elem(x)) {
            return Err(TheoremError::HypothesisFailed("the Lie set contains a non-nilpotent element".into()));
        }
        nil_checked = card;
    }
    let g = units(alg, limits)?;
    let (solvable, _) = g.is_solvable();
    let (nilpotent, _) = g.is_nilpotent();
    if !solvable && !nilpotent {
        return Err(TheoremError::HypothesisFailed("the unit group is neither solvable nor bounded Engel".into()));
    }
    let s = alg.subalgebra_generated(l.basis(), false);
    let index = alg.nilpotency_index(&s);
    let s_nilpotent = index.is_some_and(|m| m <= s.dim() + 1);
    let conditions = vec![
        cond("thm2.4.lie_set_nil", CondValue::True, json!({ "lie_dim": l.dim(), "elements_checked": nil_checked })),
        cond(
            "thm2.4.units",
            CondValue::True,
            json!({ "unit_group_order": g.order(), "solvable": solvable, "bounded_engel": nilpotent }),
        ),
        cond(
            "thm2.4.s_nilpotent",
            CondValue::from_bool(s_nilpotent),
            json!({ "s_dim": s.dim(), "nilpotency_index": index }),
        ),
    ];
    let consistency = TheoremVerdict::settle(true, &[Some(s_nilpotent)]);
    Ok(TheoremVerdict {
        theorem: "thm2.4".into(),
        hypothesis_holds: true,
        hypothesis_notes: Vec::new(),
        conditions,
        consistency,
    })
}
