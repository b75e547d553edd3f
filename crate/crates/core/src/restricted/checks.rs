//! Checkers for the statements about `u(L)`: nilpotent elements versus
//! `P(L) u(L)`, the square-zero element built from a p-polynomial, and the
//! corollaries relating `u(L)^x`, `u(L)` and `L`.

use std::fmt;

use serde_json::{json, Value};

use super::pbw::Enveloping;
use super::pnil::{subspace_elements, NonClosure, PSet, MAX_P_SCAN};
use super::RestrictedError;
use crate::algebra::AlgebraError;
use crate::fields::Field;
use crate::linalg::Subspace;
use crate::liestruct::theorems::{cond, unevaluated, units};
use crate::liestruct::{algebra_engel_length, is_lie_nilpotent, is_lie_solvable, CondValue, Consistency, Limits, TheoremVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corollary {
    /// Units solvable, `u(L)` Lie solvable, `[L, L]` p-nilpotent.
    SolvableUnits,
    /// Units bounded Engel, `u(L)` bounded Engel, `L` nilpotent with
    /// `[L, L]` p-nil of bounded index.
    EngelUnits,
    /// Units nilpotent, `u(L)` Lie nilpotent, `L` nilpotent with `[L, L]`
    /// p-nilpotent.
    NilpotentUnits,
}

impl Corollary {
    pub const ALL: [Corollary; 3] = [Corollary::SolvableUnits, Corollary::EngelUnits, Corollary::NilpotentUnits];

    pub fn id(self) -> &'static str {
        match self {
            Corollary::SolvableUnits => "cor3.8",
            Corollary::EngelUnits => "cor3.9",
            Corollary::NilpotentUnits => "cor3.10",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.id() == s || c.id().trim_start_matches("cor") == s)
    }
}

impl fmt::Display for Corollary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn pset_detail<F: Field>(u: &Enveloping<F>, pset: &PSet<F::Elem>) -> Value {
    let fmt = |v: &[F::Elem]| u.fmt_elem(&u.embed(v));
    match pset {
        PSet::Subspace { space, exact } => json!({
            "kind": "subspace",
            "dim": space.dim(),
            "basis": space.basis().iter().map(|v| fmt(v)).collect::<Vec<_>>(),
            "exact": exact,
        }),
        PSet::Set { elements, witness } => {
            let (kind, a, b) = match witness {
                NonClosure::Sum(a, b) => ("sum", a, b),
                NonClosure::Bracket(a, b) => ("bracket", a, b),
            };
            json!({
                "kind": "set",
                "size": elements.len(),
                "non_closure": { "kind": kind, "a": fmt(a), "b": fmt(b) },
            })
        }
    }
}

/// Whether every element of `s` is p-nilpotent: exhaustively over a finite
/// field, through `P(L)` otherwise (`None` when `P(L)` is only known
/// approximately).
fn is_p_nil_space<F: Field>(u: &Enveloping<F>, s: &Subspace<F::Elem>) -> Result<Option<bool>, RestrictedError> {
    let f = u.field();
    if s.is_zero() {
        return Ok(Some(true));
    }
    if f.order().is_some() {
        for v in subspace_elements(f, s, MAX_P_SCAN)? {
            if !u.is_p_nilpotent(&v)? {
                return Ok(Some(false));
            }
        }
        return Ok(Some(true));
    }
    match u.compute_p()? {
        PSet::Subspace { space, exact } => {
            if s.is_subspace_of(f, &space) {
                Ok(Some(true))
            } else if exact {
                Ok(Some(false))
            } else {
                Ok(s.basis().iter().any(|b| !u.is_p_nilpotent(b).unwrap_or(true)).then_some(false))
            }
        }
        PSet::Set { .. } => Ok(None),
    }
}

/// Nilpotent elements of `u(L)` against the ideal `P(L) u(L)`.
///
/// Over a finite (perfect) field the hypotheses are perfectness and
/// `[L, L] <= P(L)`, and the comparison is exhaustive. Over `F_p(t)` the
/// statement does not apply; instead `P(L) = 0` is tested together with a
/// search for a nonzero nilpotent `e_i^{p-1} e_j - e_j`.
pub fn lemma_3_2_check<F: Field>(u: &Enveloping<F>, limits: &Limits) -> Result<TheoremVerdict, RestrictedError> {
    let lie = u.lie();
    let f = lie.field();
    let alg = u.algebra();
    let pset = u.compute_p()?;
    let mut conditions = Vec::new();
    let mut notes = Vec::new();
    let perfect = f.is_perfect();
    conditions.push(cond("lemma3.2.perfect", CondValue::from_bool(perfect), json!(null)));

    if !perfect {
        notes.push("field is not perfect".to_string());
        let p_zero = match &pset {
            PSet::Subspace { space, exact: true } => CondValue::from_bool(space.is_zero()),
            PSet::Subspace { space, exact: false } if !space.is_zero() => CondValue::False,
            _ => CondValue::Unevaluated,
        };
        conditions.push(cond("lemma3.2.p_is_zero", p_zero, pset_detail(u, &pset)));
        let p = lie.characteristic() as u64;
        let mut witness = cond("lemma3.2.nilpotent_witness", CondValue::False, json!({ "searched": "e_i^(p-1) e_j - e_j" }));
        'search: for i in 0..lie.dim() {
            for j in 0..lie.dim() {
                if i == j {
                    continue;
                }
                let x = u.embed(&lie.basis_elem(i));
                let y = u.embed(&lie.basis_elem(j));
                let z = alg.sub(&alg.mul(&alg.pow(&x, p - 1), &y), &y);
                if !alg.is_zero(&z) && alg.is_nilpotent_elem(&z) {
                    let square_zero = alg.is_zero(&alg.mul(&z, &z));
                    witness = cond(
                        "lemma3.2.nilpotent_witness",
                        CondValue::True,
                        json!({ "i": i, "j": j, "z": u.fmt_elem(&z), "square_zero": square_zero }),
                    );
                    break 'search;
                }
            }
        }
        conditions.push(witness);
        return Ok(TheoremVerdict {
            theorem: "lemma3.2".into(),
            hypothesis_holds: false,
            hypothesis_notes: notes,
            conditions,
            consistency: Consistency::OutsideHypothesis,
        });
    }

    let derived = lie.derived_subalgebra();
    let derived_in_p = match &pset {
        PSet::Subspace { space, .. } => derived.is_subspace_of(f, space),
        PSet::Set { elements, .. } => subspace_elements(f, &derived, MAX_P_SCAN)?.iter().all(|v| elements.contains(v)),
    };
    conditions.push(cond(
        "lemma3.2.derived_in_p",
        CondValue::from_bool(derived_in_p),
        json!({ "derived_dim": derived.dim(), "p": pset_detail(u, &pset) }),
    ));
    if !derived_in_p {
        notes.push("[L, L] is not contained in P(L)".to_string());
    }
    let hypothesis_holds = notes.is_empty();

    let nilpotents = match alg.nilpotent_bitmap(limits.max_card) {
        Ok(b) => b,
        Err(e) => {
            conditions.push(unevaluated("lemma3.2.n_equals_pu", &e));
            let consistency = TheoremVerdict::settle(hypothesis_holds, &[None]);
            return Ok(TheoremVerdict {
                theorem: "lemma3.2".into(),
                hypothesis_holds,
                hypothesis_notes: notes,
                conditions,
                consistency,
            });
        }
    };
    let n_count = nilpotents.iter().filter(|&&b| b).count();
    let equal = match u.pl_ideal(&pset) {
        Ok(pu) => {
            let members = subspace_elements(f, &pu, limits.max_card)?;
            let all_nil = members.iter().all(|x| nilpotents[alg.index_of(x) as usize]);
            cond(
                "lemma3.2.n_equals_pu",
                CondValue::from_bool(all_nil && members.len() == n_count),
                json!({ "nilpotent_count": n_count, "pu_dim": pu.dim(), "pu_size": members.len() }),
            )
        }
        Err(_) => cond(
            "lemma3.2.n_equals_pu",
            CondValue::NotApplicable,
            json!({ "nilpotent_count": n_count, "reason": "P(L) is not a subspace" }),
        ),
    };
    let requirement = if equal.value == CondValue::NotApplicable { None } else { equal.value.as_bool() };
    conditions.push(equal);
    let consistency = TheoremVerdict::settle(hypothesis_holds, &[requirement]);
    Ok(TheoremVerdict { theorem: "lemma3.2".into(), hypothesis_holds, hypothesis_notes: notes, conditions, consistency })
}

/// Builds `w = [x, y] sum alpha_i x^{p^i - 1}` from the p-polynomial of
/// `x = e_{x_idx}` and checks `w^2 = 0`. When `u(L)` is reduced (decided
/// exhaustively over finite fields) it further checks `w = 0`,
/// `[x, y]` in `span{x, x^[p], ..., x^{[p]^{m-1}}}` and `[x, y] = 0`.
pub fn lemma_3_5_witness_check<F: Field>(
    u: &Enveloping<F>,
    x_idx: usize,
    y_idx: usize,
    limits: &Limits,
) -> Result<TheoremVerdict, RestrictedError> {
    let lie = u.lie();
    let f = lie.field();
    let alg = u.algebra();
    if x_idx >= lie.dim() || y_idx >= lie.dim() {
        return Err(RestrictedError::BadShape(format!("basis indices {x_idx}, {y_idx} out of range")));
    }
    let x = lie.basis_elem(x_idx);
    let y = lie.basis_elem(y_idx);
    let pp = u.p_polynomial(&x)?;
    let p = lie.characteristic() as u64;
    let xe = u.embed(&x);
    let mut g = alg.zero();
    for (i, a) in pp.coeffs.iter().enumerate() {
        let power = alg.pow(&xe, p.pow(i as u32) - 1);
        g = alg.add(&g, &alg.scale(a, &power));
    }
    let xy = lie.bracket(&x, &y);
    let w = alg.mul(&u.embed(&xy), &g);
    let alpha0_zero = f.is_zero(&pp.coeffs[0]);
    let mut conditions = vec![cond(
        "lemma3.5.w_square_zero",
        CondValue::from_bool(alg.is_zero(&alg.mul(&w, &w))),
        json!({
            "w": u.fmt_elem(&w),
            "p_polynomial": pp.coeffs.iter().map(|c| f.fmt_elem(c)).collect::<Vec<_>>(),
            "branch": if alpha0_zero { "alpha0_zero" } else { "alpha0_nonzero" },
        }),
    )];

    let reduced = match alg.nilpotent_bitmap(limits.max_card) {
        Ok(bits) => {
            let count = bits.iter().filter(|&&b| b).count();
            cond("lemma3.5.reduced", CondValue::from_bool(count == 1), json!({ "nilpotent_count": count }))
        }
        Err(e) => unevaluated("lemma3.5.reduced", &e),
    };
    let reduced_value = reduced.value;
    conditions.push(reduced);
    let mut notes = Vec::new();
    match reduced_value {
        CondValue::True => {}
        CondValue::False => notes.push("u(L) is not reduced".to_string()),
        _ => notes.push("reducedness of u(L) not evaluated".to_string()),
    }
    let hypothesis_holds = notes.is_empty();

    if hypothesis_holds {
        let mut span = Subspace::zero(lie.dim());
        let mut power = x.clone();
        for _ in 0..pp.m() {
            span.insert(f, &power);
            power = u.p_power(&power)?;
        }
        conditions.push(cond("lemma3.5.w_zero", CondValue::from_bool(alg.is_zero(&w)), json!(null)));
        conditions.push(cond(
            "lemma3.5.bracket_in_span",
            CondValue::from_bool(span.contains(f, &xy)),
            json!({ "span_dim": span.dim() }),
        ));
        conditions.push(cond(
            "lemma3.5.bracket_zero",
            CondValue::from_bool(crate::linalg::is_zero_vec(f, &xy)),
            json!({ "bracket": u.fmt_elem(&u.embed(&xy)) }),
        ));
    } else {
        for name in ["lemma3.5.w_zero", "lemma3.5.bracket_in_span", "lemma3.5.bracket_zero"] {
            conditions.push(cond(name, CondValue::NotApplicable, json!({ "reason": "u(L) not known to be reduced" })));
        }
    }
    let requirements: Vec<Option<bool>> = conditions
        .iter()
        .filter(|c| c.name != "lemma3.5.reduced" && c.value != CondValue::NotApplicable)
        .map(|c| c.value.as_bool())
        .collect();
    let consistency = TheoremVerdict::settle(hypothesis_holds, &requirements);
    Ok(TheoremVerdict { theorem: "lemma3.5".into(), hypothesis_holds, hypothesis_notes: notes, conditions, consistency })
}

/// Evaluates the three equivalent conditions of a corollary on `L`.
///
/// In finite dimension the clauses about an ideal `I` with `L/I` and
/// `[I, I]` finite-dimensional hold with `I = L`, so condition (3) reduces
/// to p-nilpotency of the restricted subalgebra generated by `[L, L]` (and
/// nilpotency of `L` for the Engel and nilpotent cases).
pub fn corollary_evaluate<F: Field>(u: &Enveloping<F>, which: Corollary, limits: &Limits) -> TheoremVerdict {
    let lie = u.lie();
    let f = lie.field();
    let alg = u.algebra();
    let id = which.id();
    let name = |k: usize| format!("{id}.cond{k}");
    let mut notes = Vec::new();
    match which {
        Corollary::SolvableUnits => {
            if f.characteristic() == 2 {
                notes.push("characteristic 2".to_string());
            }
            if f.order().is_some_and(|q| q < 5) {
                notes.push("|F| < 5".to_string());
            }
        }
        Corollary::EngelUnits | Corollary::NilpotentUnits => {
            if !f.is_perfect() {
                notes.push("field is not perfect".to_string());
            }
            if f.order().is_some_and(|q| q < 3) {
                notes.push("|F| < 3".to_string());
            }
        }
    }
    let hypothesis_holds = notes.is_empty();
    let mut conditions = Vec::new();

    let group = units(alg, limits);
    conditions.push(match &group {
        Ok(g) => match which {
            Corollary::SolvableUnits => {
                let (s, len) = g.is_solvable();
                cond(&name(1), CondValue::from_bool(s), json!({ "unit_group_order": g.order(), "derived_length": len }))
            }
            Corollary::EngelUnits => {
                let r = g.engel_report(limits.engel_cap);
                cond(&name(1), CondValue::from_bool(r.engel), json!({ "unit_group_order": g.order(), "min_engel_length": r.min_length }))
            }
            Corollary::NilpotentUnits => {
                let (n, class) = g.is_nilpotent();
                cond(&name(1), CondValue::from_bool(n), json!({ "unit_group_order": g.order(), "nilpotency_class": class }))
            }
        },
        Err(e) => unevaluated(&name(1), e),
    });

    conditions.push(match which {
        Corollary::SolvableUnits => {
            let (s, len) = is_lie_solvable(alg);
            cond(&name(2), CondValue::from_bool(s), json!({ "lie_derived_length": len }))
        }
        Corollary::EngelUnits => match algebra_engel_length(alg, &alg.full_space(), limits.engel_cap) {
            Ok(Some(len)) => cond(&name(2), CondValue::True, json!({ "min_engel_length": len })),
            Ok(None) => cond(&name(2), CondValue::False, json!({ "reason": "some ad y is not nilpotent" })),
            Err(e) => unevaluated(&name(2), &e),
        },
        Corollary::NilpotentUnits => {
            let (n, class) = is_lie_nilpotent(alg);
            cond(&name(2), CondValue::from_bool(n), json!({ "lie_nilpotency_class": class }))
        }
    });

    conditions.push(match lie_side(u, which) {
        Ok((value, detail)) => cond(&name(3), value, detail),
        Err(RestrictedError::Algebra(e)) => unevaluated(&name(3), &e),
        Err(e) => unevaluated(&name(3), &AlgebraError::UnsupportedField(e.to_string())),
    });

    let values: Vec<Option<bool>> = conditions.iter().map(|c| c.value.as_bool()).collect();
    let requirement = if values.contains(&None) {
        None
    } else {
        Some(values.iter().all(|v| *v == values[0]))
    };
    let consistency = TheoremVerdict::settle(hypothesis_holds, &[requirement]);
    TheoremVerdict { theorem: id.into(), hypothesis_holds, hypothesis_notes: notes, conditions, consistency }
}

fn lie_side<F: Field>(u: &Enveloping<F>, which: Corollary) -> Result<(CondValue, Value), RestrictedError> {
    let lie = u.lie();
    let derived = lie.derived_subalgebra();
    let closure = lie.restricted_subalgebra(u, derived.basis())?;
    let p_nil = is_p_nil_space(u, &closure)?;
    let mut detail = json!({
        "derived_dim": derived.dim(),
        "restricted_closure_dim": closure.dim(),
        "closure_p_nil": p_nil,
    });
    let value = match which {
        Corollary::SolvableUnits => p_nil,
        Corollary::EngelUnits | Corollary::NilpotentUnits => {
            let (nil, class) = lie.is_nilpotent();
            detail["l_nilpotent"] = json!(nil);
            detail["l_class"] = json!(class);
            match p_nil {
                Some(b) => Some(b && nil),
                None if !nil => Some(false),
                None => None,
            }
        }
    };
    Ok((value.map_or(CondValue::Unevaluated, CondValue::from_bool), detail))
}
