//! One-page structural profiles of fields, algebras and restricted Lie
//! algebras.

use std::sync::Arc;

use finalg::algebra::{Algebra, AlgebraError, AnyAlgebra};
use finalg::fields::Field;
use finalg::liestruct::{is_lie_nilpotent, is_lie_solvable, lie_derived_series, lie_lower_central_series};
use finalg::restricted::{AnyRestricted, PSet, RestrictedLieAlgebra};
use finalg::unitgroup::UnitGroup;
use serde_json::{json, Value};

use crate::builtins::Input;
use crate::report::Outcome;
use crate::Settings;

pub fn describe(input: &Input, s: &Settings) -> Value {
    match input {
        Input::Field(f) => field_profile(f),
        Input::Algebra(AnyAlgebra::Finite(a)) => algebra_profile(a, s),
        Input::Algebra(AnyAlgebra::RationalFunction(a)) => algebra_profile(a, s),
        Input::Restricted(AnyRestricted::Finite(l)) => restricted_profile(l, s),
        Input::Restricted(AnyRestricted::RationalFunction(l)) => restricted_profile(l, s),
    }
}

fn field_profile<F: Field>(f: &F) -> Value {
    json!({
        "kind": "field",
        "field": f.spec(),
        "order": f.order(),
        "characteristic": f.characteristic(),
        "perfect": f.is_perfect(),
    })
}

fn bounded(e: &AlgebraError) -> Value {
    match e {
        AlgebraError::TooLarge { .. } => json!(Outcome::Skipped),
        other => json!({ "error": other.to_string() }),
    }
}

pub fn algebra_profile<F: Field>(alg: &Algebra<F>, s: &Settings) -> Value {
    let full = alg.full_space();
    let derived = lie_derived_series(alg, &full);
    let lcs = lie_lower_central_series(alg, &full);
    let (lie_solvable, derived_length) = is_lie_solvable(alg);
    let (lie_nilpotent, lie_class) = is_lie_nilpotent(alg);
    let radical = match alg.radical() {
        Ok(r) => json!({
            "dim": r.radical.dim(),
            "nilpotency_index": r.nilpotency_index,
            "method": format!("{:?}", r.method),
        }),
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    let units = match UnitGroup::enumerate(Arc::new(alg.clone()), s.limits.max_card) {
        Ok(g) if g.order() as u64 > s.max_group_card => json!(Outcome::Skipped),
        Ok(g) => {
            let (solvable, length) = g.is_solvable();
            let (nilpotent, class) = g.is_nilpotent();
            json!({
                "order": g.order(),
                "abelian": g.is_abelian(),
                "exponent": g.exponent(),
                "solvable": solvable,
                "derived_length": length,
                "nilpotent": nilpotent,
                "nilpotency_class": class,
            })
        }
        Err(e) => bounded(&e),
    };
    json!({
        "kind": "algebra",
        "field": alg.field().spec(),
        "dim": alg.dim(),
        "cardinality": alg.cardinality(),
        "commutative": alg.is_commutative(),
        "center_dim": alg.center().dim(),
        "radical": radical,
        "lie_derived_series": derived.sizes,
        "lie_solvable": lie_solvable,
        "lie_derived_length": derived_length,
        "lie_lower_central_series": lcs.sizes,
        "lie_nilpotent": lie_nilpotent,
        "lie_nilpotency_class": lie_class,
        "units": units,
    })
}

fn restricted_profile<F: Field>(l: &RestrictedLieAlgebra<F>, s: &Settings) -> Value {
    let (nilpotent, class) = l.is_nilpotent();
    let mut out = json!({
        "kind": "restricted",
        "field": l.field().spec(),
        "dim": l.dim(),
        "abelian": l.is_abelian(),
        "derived_dim": l.derived_subalgebra().dim(),
        "nilpotent": nilpotent,
        "nilpotency_class": class,
    });
    match l.build_u() {
        Ok(u) => {
            out["p_set"] = match u.compute_p() {
                Ok(PSet::Subspace { space, exact }) => json!({
                    "subspace": true,
                    "exact": exact,
                    "dim": space.dim(),
                    "basis": space.basis().iter().map(|b| u.fmt_elem(&u.embed(b))).collect::<Vec<_>>(),
                }),
                Ok(PSet::Set { elements, .. }) => json!({ "subspace": false, "elements": elements.len() }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            out["enveloping"] = algebra_profile(u.algebra(), s);
        }
        Err(e) => out["enveloping"] = json!({ "error": e.to_string() }),
    }
    out
}
