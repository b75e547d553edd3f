//! Named scenarios. Each one runs a fixed list of checks and returns one
//! record per check, in declared order.

use std::sync::Arc;

use finalg::algebra::{triangular_pairs, Algebra, AlgebraError};
use finalg::corpus::full_corpus;
use finalg::fields::{poly, Field, FiniteField};
use finalg::liestruct::{
    check_engel_identity, check_nonmatrix_pi, lie_derived_series, theorem_2_1_evaluate, theorem_2_2_evaluate,
    theorem_2_4_evaluate, CheckMode, CondValue, Consistency, TheoremError, Thm21Witness,
};
use finalg::restricted::{
    corollary_evaluate, klein, lemma32_counterexample, lemma_3_2_check, lemma_3_5_witness_check, sweep_family,
    Corollary, Enveloping, PSet, RestrictedError, RestrictedLieAlgebra, SweepFamily,
};
use finalg::unitgroup::UnitGroup;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::builtins::builtin_algebra;
use crate::report::{CheckRecord, Outcome};
use crate::{parallel_map, Settings};

pub struct Scenario {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&Settings) -> Vec<CheckRecord>,
}

impl Scenario {
    pub fn run(&self, settings: &Settings) -> Vec<CheckRecord> {
        (self.run)(settings)
    }
}

pub fn scenarios() -> Vec<Scenario> {
    vec![
        Scenario { id: "m2f3", summary: "GL2(F3) solvable while M2(F3) is not Lie solvable; GL2(F4) not solvable", run: m2f3 },
        Scenario { id: "klein", summary: "u(L) with Klein four unit group that is not bounded Engel", run: klein_scenario },
        Scenario {
            id: "lemma32-counterexample",
            summary: "over F2(t): P(L) = 0 yet xy - y is a nonzero square-zero element",
            run: lemma32_counterexample_scenario,
        },
        Scenario { id: "lemma32-klein", summary: "N(u(L)) = P(L)u(L) for the Klein presentation", run: lemma32_klein },
        Scenario { id: "thm2.1-t2f4", summary: "single-step commutative chain witness on T2(F4)", run: thm21_t2f4 },
        Scenario {
            id: "thm2.1-forward",
            summary: "solvable units force Lie solvability and commutative A/J over F_q, q >= 4",
            run: thm21_forward,
        },
        Scenario { id: "thm2.2-f3", summary: "Engel/nilpotent unit groups against Lie structure over F3", run: thm22_f3 },
        Scenario { id: "thm2.4-t4f2", summary: "strict upper triangular Lie set in T4(F2)", run: thm24_t4f2 },
        Scenario { id: "jordan-chevalley", summary: "x = x_s + x_n contract on M2(F2), T2(F3), M3(F4)", run: jordan_chevalley },
        Scenario { id: "radical-oracle", summary: "radical against the brute-force oracle on the corpus", run: radical_oracle },
        Scenario { id: "nonmatrix-pi", summary: "([x,y]z)^(p^t) = 0 on T2(F2) and its failure on M2(F2)", run: nonmatrix_pi },
        Scenario { id: "lemma35-witnesses", summary: "square-zero witnesses built from p-polynomials", run: lemma35 },
        Scenario { id: "pbw-samples", summary: "PBW certificates and p-polynomials on the sweep families", run: pbw_samples },
    ]
}

pub fn find(id: &str) -> Option<Scenario> {
    scenarios().into_iter().find(|s| s.id == id)
}

/// Runs the scenarios on `settings.jobs` threads; records keep scenario order.
pub fn run_scenarios(list: &[Scenario], settings: &Settings) -> Vec<CheckRecord> {
    let inner = Settings { jobs: 1, ..*settings };
    parallel_map(list, settings.jobs, |_, s| s.run(&inner)).into_iter().flatten().collect()
}

fn coords<F: Field>(f: &F, x: &[F::Elem]) -> Value {
    Value::Array(x.iter().map(|c| f.encode(c)).collect())
}

fn gf(q: u32) -> FiniteField {
    FiniteField::gf(q).expect("builtin field orders are valid")
}

fn algebra(name: &str) -> Algebra<FiniteField> {
    builtin_algebra(name).expect("builtin algebra names are valid")
}

/// Enumerates the unit group, honoring both enumeration bounds.
fn units(
    scenario: &str,
    check: &str,
    alg: Algebra<FiniteField>,
    s: &Settings,
) -> Result<UnitGroup<FiniteField>, CheckRecord> {
    let g = UnitGroup::enumerate(Arc::new(alg), s.limits.max_card)
        .map_err(|e| CheckRecord::algebra_error(scenario, check, &e))?;
    if g.order() as u64 > s.max_group_card {
        let e = AlgebraError::TooLarge { what: format!("unit group of order {}", g.order()), bound: s.max_group_card };
        return Err(CheckRecord::algebra_error(scenario, check, &e));
    }
    Ok(g)
}

fn restricted_error(scenario: &str, check: &str, e: &RestrictedError) -> CheckRecord {
    match e {
        RestrictedError::Algebra(a) => CheckRecord::algebra_error(scenario, check, a),
        other => CheckRecord::error(scenario, check, other, false),
    }
}

fn enveloping<F: Field>(scenario: &str, l: &RestrictedLieAlgebra<F>) -> Result<Enveloping<F>, CheckRecord> {
    l.build_u().map_err(|e| restricted_error(scenario, "build_u", &e))
}

fn m2f3(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "m2f3";
    let mut out = Vec::new();
    match units(ID, "gl2f3.derived_series", algebra("m2f3"), s) {
        Ok(g) => {
            let orders: Vec<usize> = g.derived_series().iter().map(|h| h.order()).collect();
            let (solvable, length) = g.is_solvable();
            let ok = solvable && length == Some(4) && orders == [48, 24, 8, 2, 1];
            out.push(CheckRecord::check(
                ID,
                "gl2f3.derived_series",
                ok,
                json!({ "orders": orders, "solvable": solvable, "derived_length": length }),
            ));
        }
        Err(r) => out.push(r),
    }

    let m = algebra("m2f3");
    let series = lie_derived_series(&m, &m.full_space());
    out.push(CheckRecord::check(
        ID,
        "m2f3.lie_derived_series",
        series.stabilized && !series.reaches_zero(),
        json!({ "dims": series.sizes, "stabilized": series.stabilized }),
    ));

    match units(ID, "gl2f4.derived_series", algebra("m2f4"), s) {
        Ok(g) => {
            let orders: Vec<usize> = g.derived_series().iter().map(|h| h.order()).collect();
            let (solvable, _) = g.is_solvable();
            out.push(CheckRecord::check(
                ID,
                "gl2f4.derived_series",
                !solvable && orders == [180, 60],
                json!({ "orders": orders, "solvable": solvable }),
            ));
        }
        Err(r) => out.push(r),
    }

    for name in ["m2f3", "m2f4"] {
        let v = theorem_2_1_evaluate(&algebra(name), None, &s.limits);
        out.push(CheckRecord::verdict(ID, &format!("thm2.1:{name}"), &v));
    }
    out
}

fn klein_scenario(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "klein";
    let u = match enveloping(ID, &klein()) {
        Ok(u) => u,
        Err(r) => return vec![r],
    };
    let alg = u.algebra();
    let mut out = Vec::new();
    match units(ID, "units", (**alg).clone(), s) {
        Ok(g) => {
            let ok = g.order() == 4 && g.is_abelian() && g.exponent() == 2;
            out.push(CheckRecord::check(
                ID,
                "units",
                ok,
                json!({ "order": g.order(), "abelian": g.is_abelian(), "exponent": g.exponent() }),
            ));
        }
        Err(r) => out.push(r),
    }
    let full = alg.full_space();
    for n in 1..=s.limits.engel_cap {
        let check = format!("engel.n{n}");
        out.push(match check_engel_identity(alg, &full, n, &CheckMode::Exhaustive) {
            Ok(v) => {
                let detail = match &v {
                    finalg::unitgroup::IdentityVerdict::Counterexample { tuple } => json!({
                        "x": u.fmt_elem(&tuple[0]),
                        "y": u.fmt_elem(&tuple[1]),
                    }),
                    finalg::unitgroup::IdentityVerdict::Holds { checked } => json!({ "checked": checked }),
                };
                CheckRecord::check(ID, &check, !v.holds(), detail)
            }
            Err(e) => CheckRecord::algebra_error(ID, &check, &e),
        });
    }
    for c in [Corollary::EngelUnits, Corollary::NilpotentUnits] {
        out.push(CheckRecord::verdict(ID, c.id(), &corollary_evaluate(&u, c, &s.limits)));
    }
    out
}

fn lemma32_counterexample_scenario(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "lemma32-counterexample";
    let l = match lemma32_counterexample(2) {
        Ok(l) => l,
        Err(e) => return vec![restricted_error(ID, "presentation", &e)],
    };
    let u = match enveloping(ID, &l) {
        Ok(u) => u,
        Err(r) => return vec![r],
    };
    let f = l.field();
    let mut out = Vec::new();
    out.push(match u.compute_p() {
        Ok(p) => {
            let zero = matches!(&p, PSet::Subspace { space, exact: true } if space.dim() == 0);
            CheckRecord::check(ID, "p_set_zero", zero, json!({ "exact": p.is_exact(), "dim": p.subspace().map(|s| s.dim()) }))
        }
        Err(e) => restricted_error(ID, "p_set_zero", &e),
    });
    match lemma_3_2_check(&u, &s.limits) {
        Ok(v) => {
            let w = v.condition("lemma3.2.nilpotent_witness");
            let ok = v.value("lemma3.2.p_is_zero") == CondValue::True
                && v.value("lemma3.2.nilpotent_witness") == CondValue::True
                && w.is_some_and(|c| c.detail["square_zero"] == json!(true));
            let detail = w.map(|c| c.detail.clone()).unwrap_or(Value::Null);
            out.push(CheckRecord::check(ID, "nonzero_square_zero", ok, detail));
            out.push(CheckRecord::verdict(ID, "lemma3.2", &v));
        }
        Err(e) => out.push(restricted_error(ID, "lemma3.2", &e)),
    }
    let y = l.basis_elem(1);
    out.push(match u.p_polynomial(&y) {
        Ok(pp) => {
            let image = pp.associative(f);
            let minimal = u.algebra().minimal_polynomial(&u.embed(&y));
            CheckRecord::check(
                ID,
                "p_polynomial_y",
                image == minimal,
                json!({ "p_polynomial": coords(f, &pp.coeffs), "minimal_polynomial": coords(f, &minimal) }),
            )
        }
        Err(e) => restricted_error(ID, "p_polynomial_y", &e),
    });
    out
}

fn lemma32_klein(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "lemma32-klein";
    let l = klein();
    let u = match enveloping(ID, &l) {
        Ok(u) => u,
        Err(r) => return vec![r],
    };
    let f = l.field();
    let mut out = Vec::new();
    match lemma_3_2_check(&u, &s.limits) {
        Ok(v) => out.push(CheckRecord::verdict(ID, "lemma3.2", &v)),
        Err(e) => out.push(restricted_error(ID, "lemma3.2", &e)),
    }
    match u.compute_p() {
        Ok(p) => {
            let space = p.subspace().cloned();
            let expected = l.span(vec![l.basis_elem(0)]);
            out.push(CheckRecord::check(
                ID,
                "p_set",
                space.as_ref() == Some(&expected),
                json!({ "basis": space.as_ref().map(|s| s.basis().iter().map(|b| coords(f, b)).collect::<Vec<_>>()) }),
            ));
            match u.pl_ideal(&p) {
                Ok(ideal) => {
                    let names: Vec<String> = ideal.basis().iter().map(|b| u.fmt_elem(b)).collect();
                    let x = u.embed(&l.basis_elem(0));
                    let expected = finalg::linalg::Subspace::span(f, u.algebra().dim(), vec![x.clone(), {
                        let y = u.embed(&l.basis_elem(1));
                        u.algebra().mul(&x, &y)
                    }]);
                    out.push(CheckRecord::check(ID, "pl_ideal", ideal == expected, json!({ "basis": names })));
                }
                Err(e) => out.push(restricted_error(ID, "pl_ideal", &e)),
            }
        }
        Err(e) => out.push(restricted_error(ID, "p_set", &e)),
    }
    out
}

fn thm21_t2f4(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "thm2.1-t2f4";
    let alg = algebra("t2f4");
    let radical = match alg.radical() {
        Ok(r) => r.radical,
        Err(e) => return vec![CheckRecord::algebra_error(ID, "radical", &e)],
    };
    let v = theorem_2_1_evaluate(&alg, Some(&Thm21Witness::single_step(&radical)), &s.limits);
    let chain_ok = v.value("thm2.1.cond4") == CondValue::True;
    vec![
        CheckRecord::check(ID, "chain_witness", chain_ok, json!({ "radical_dim": radical.dim() })),
        CheckRecord::verdict(ID, "thm2.1", &v),
    ]
}

fn thm21_forward(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "thm2.1-forward";
    let mut checked = Vec::new();
    let mut skipped = Vec::new();
    let mut violations = Vec::new();
    for entry in full_corpus(finalg::algebra::DEFAULT_MAX_CARD.min(s.limits.max_card)) {
        if entry.algebra.field().order().is_none_or(|q| q < 4) {
            continue;
        }
        let v = theorem_2_1_evaluate(&entry.algebra, None, &s.limits);
        match v.value("thm2.1.cond1") {
            CondValue::True => {
                let ok = v.value("thm2.1.cond2") == CondValue::True && v.value("thm2.1.cond3") == CondValue::True;
                if !ok || v.consistency == Consistency::Inconsistent {
                    violations.push(entry.name.clone());
                }
            }
            CondValue::False => {
                if v.consistency == Consistency::Inconsistent {
                    violations.push(entry.name.clone());
                }
            }
            _ => {
                skipped.push(entry.name.clone());
                continue;
            }
        }
        checked.push(entry.name);
    }
    vec![CheckRecord::check(
        ID,
        "corpus",
        violations.is_empty(),
        json!({ "checked": checked.len(), "skipped": skipped, "violations": violations }),
    )]
}

fn thm22_f3(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "thm2.2-f3";
    ["t2f3", "m2f3", "f3[C3]", "f3[S3]", "dual-f3"]
        .into_iter()
        .map(|name| CheckRecord::verdict(ID, &format!("thm2.2:{name}"), &theorem_2_2_evaluate(&algebra(name), &s.limits)))
        .collect()
}

fn thm24_t4f2(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "thm2.4-t4f2";
    let alg = algebra("t4f2");
    let gens: Vec<Vec<u32>> = triangular_pairs(4)
        .into_iter()
        .enumerate()
        .filter(|(_, (i, j))| i < j)
        .map(|(k, _)| alg.basis_elem(k))
        .collect();
    match theorem_2_4_evaluate(&alg, &gens, &s.limits) {
        Ok(v) => {
            let index = v.condition("thm2.4.s_nilpotent").map(|c| c.detail["nilpotency_index"].clone());
            let ok = v.consistency == Consistency::Consistent && index == Some(json!(4));
            vec![
                CheckRecord::check(ID, "s_nilpotent_index", ok, json!({ "nilpotency_index": index })),
                CheckRecord::verdict(ID, "thm2.4", &v),
            ]
        }
        Err(TheoremError::HypothesisFailed(msg)) => {
            vec![CheckRecord::new(ID, "thm2.4", Outcome::OutsideHypothesis, json!({ "reason": msg }))]
        }
        Err(TheoremError::Algebra(e)) => vec![CheckRecord::algebra_error(ID, "thm2.4", &e)],
    }
}

/// First failed requirement of the decomposition contract, if any.
fn jc_failure<F: Field>(alg: &Algebra<F>, x: &[F::Elem]) -> Option<&'static str> {
    let f = alg.field();
    let jc = match alg.jordan_chevalley(x) {
        Ok(jc) => jc,
        Err(_) => return Some("decomposition failed"),
    };
    if alg.add(&jc.semisimple, &jc.nilpotent) != x {
        return Some("x_s + x_n != x");
    }
    if !alg.is_zero(&alg.bracket(&jc.semisimple, &jc.nilpotent)) {
        return Some("[x_s, x_n] != 0");
    }
    if !alg.is_nilpotent_elem(&jc.nilpotent) {
        return Some("x_n not nilpotent");
    }
    let m = alg.minimal_polynomial(&jc.semisimple);
    if poly::poly_gcd(f, &m, &poly::derivative(f, &m)).len() != 1 {
        return Some("x_s not semisimple");
    }
    None
}

fn jordan_chevalley(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "jordan-chevalley";
    let mut out = Vec::new();
    for name in ["m2f2", "t2f3"] {
        let alg = algebra(name);
        let card = alg.cardinality().expect("finite");
        let failure = (0..card).map(|i| alg.element_at(i)).find_map(|x| jc_failure(&alg, &x).map(|why| (x, why)));
        let detail = match &failure {
            None => json!({ "checked": card }),
            Some((x, why)) => json!({ "checked": card, "element": coords(alg.field(), x), "failure": why }),
        };
        out.push(CheckRecord::check(ID, &format!("exhaustive:{name}"), failure.is_none(), detail));
    }
    let alg = Algebra::matrix(gf(4), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let samples = 200;
    let mut failure = None;
    for _ in 0..samples {
        let x: Vec<u32> = (0..alg.dim()).map(|_| alg.field().random_elem(&mut rng)).collect();
        if let Some(why) = jc_failure(&alg, &x) {
            failure = Some(json!({ "element": coords(alg.field(), &x), "failure": why }));
            break;
        }
    }
    out.push(CheckRecord::check(
        ID,
        "sampled:m3f4",
        failure.is_none(),
        json!({ "seed": s.seed, "samples": samples, "failure": failure }),
    ));
    out
}

fn radical_oracle(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "radical-oracle";
    let bound = finalg::algebra::DEFAULT_MAX_CARD.min(s.limits.max_card);
    let mut mismatches = Vec::new();
    let mut errors = Vec::new();
    let mut checked = 0;
    for entry in full_corpus(bound) {
        match (entry.algebra.radical(), entry.algebra.radical_brute_oracle(bound)) {
            (Ok(r), Ok(b)) => {
                checked += 1;
                if r.radical != b {
                    mismatches.push(json!({ "algebra": entry.name, "radical_dim": r.radical.dim(), "oracle_dim": b.dim() }));
                }
            }
            (Err(e), _) | (_, Err(e)) => errors.push(json!({ "algebra": entry.name, "error": e.to_string() })),
        }
    }
    vec![CheckRecord::check(
        ID,
        "corpus",
        mismatches.is_empty() && errors.is_empty(),
        json!({ "bound": bound, "checked": checked, "mismatches": mismatches, "errors": errors }),
    )]
}

fn nonmatrix_pi(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "nonmatrix-pi";
    let mut out = Vec::new();
    for (name, expect_holds) in [("t2f2", true), ("m2f2", false)] {
        let alg = algebra(name);
        let check = format!("t1:{name}");
        out.push(match check_nonmatrix_pi(&alg, &alg.full_space(), 1, &CheckMode::Exhaustive) {
            Ok(v) => {
                let detail = match &v {
                    finalg::unitgroup::IdentityVerdict::Holds { checked } => json!({ "holds": true, "checked": checked }),
                    finalg::unitgroup::IdentityVerdict::Counterexample { tuple } => json!({
                        "holds": false,
                        "counterexample": tuple.iter().map(|x| coords(alg.field(), x)).collect::<Vec<_>>(),
                    }),
                };
                CheckRecord::check(ID, &check, v.holds() == expect_holds, detail)
            }
            Err(e) => CheckRecord::algebra_error(ID, &check, &e),
        });
    }
    let _ = s;
    out
}

fn lemma35(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "lemma35-witnesses";
    let f3 = gf(3);
    let diagonal = RestrictedLieAlgebra::new(
        f3.clone(),
        vec![vec![vec![0, 0]; 2]; 2],
        vec![vec![1, 0], vec![0, 1]],
    );
    let mut out = Vec::new();
    let cases: Vec<(&str, Result<RestrictedLieAlgebra<FiniteField>, RestrictedError>)> =
        vec![("klein", Ok(klein())), ("f3-toral", diagonal)];
    for (name, l) in cases {
        let check = format!("lemma3.5:{name}");
        let u = match l.and_then(|l| l.build_u()) {
            Ok(u) => u,
            Err(e) => {
                out.push(restricted_error(ID, &check, &e));
                continue;
            }
        };
        out.push(match lemma_3_5_witness_check(&u, 0, 1, &s.limits) {
            Ok(v) => CheckRecord::verdict(ID, &check, &v),
            Err(e) => restricted_error(ID, &check, &e),
        });
    }
    out
}

fn pbw_samples(s: &Settings) -> Vec<CheckRecord> {
    const ID: &str = "pbw-samples";
    let mut out = Vec::new();
    let mut pool = Vec::new();
    for family in SweepFamily::ALL {
        let all = sweep_family(family);
        let p = family.prime() as usize;
        let mut bad = Vec::new();
        for (i, l) in all.iter().enumerate() {
            match l.build_u() {
                Ok(u) if u.algebra().dim() == p.pow(l.dim() as u32) => pool.push(u),
                Ok(u) => bad.push(json!({ "index": i, "u_dim": u.algebra().dim() })),
                Err(e) => bad.push(json!({ "index": i, "error": e.to_string() })),
            }
        }
        out.push(CheckRecord::check(
            ID,
            &format!("certificate:{family}"),
            bad.is_empty(),
            json!({ "presentations": all.len(), "failures": bad }),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let samples = 500;
    let mut failure = None;
    for _ in 0..samples {
        let Some(u) = pool.choose(&mut rng) else { break };
        let l = u.lie();
        let v: Vec<u32> = (0..l.dim()).map(|_| l.field().random_elem(&mut rng)).collect();
        let agrees = u
            .p_polynomial(&v)
            .map(|pp| pp.associative(l.field()) == u.algebra().minimal_polynomial(&u.embed(&v)));
        if agrees != Ok(true) {
            failure = Some(json!({ "presentation": l.to_json(), "v": coords(l.field(), &v) }));
            break;
        }
    }
    out.push(CheckRecord::check(
        ID,
        "p_polynomial_vs_minimal",
        failure.is_none() && !pool.is_empty(),
        json!({ "seed": s.seed, "samples": samples, "failure": failure }),
    ));
    out
}
