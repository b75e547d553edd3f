use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{cyclic_group, dihedral_group};
use crate::fields::FiniteField;

fn f(q: u32) -> FiniteField {
    FiniteField::gf(q).unwrap()
}

fn strict_upper(alg: &Algebra<FiniteField>, n: usize) -> Subspace<u32> {
    let pairs = crate::algebra::triangular_pairs(n);
    let gens = pairs.iter().enumerate().filter(|(_, (i, j))| i < j).map(|(k, _)| alg.basis_elem(k)).collect();
    alg.span(gens)
}

/// Least `n` with the Engel identity holding, by evaluating every pair.
fn engel_length_by_pairs(alg: &Algebra<FiniteField>, cap: usize) -> Option<usize> {
    let card = alg.cardinality().unwrap();
    let elems: Vec<Vec<u32>> = (0..card).map(|i| alg.element_at(i)).collect();
    (1..=cap).find(|&n| elems.iter().all(|x| elems.iter().all(|y| alg.is_zero(&engel_bracket(alg, x, y, n)))))
}

fn small_corpus() -> Vec<(&'static str, Algebra<FiniteField>)> {
    vec![
        ("F3", Algebra::field_algebra(f(3))),
        ("dual F3", Algebra::dual_numbers(f(3))),
        ("T2(F2)", Algebra::triangular(f(2), 2)),
        ("T2(F3)", Algebra::triangular(f(3), 2)),
        ("T3(F2)", Algebra::triangular(f(2), 3)),
        ("M2(F2)", Algebra::matrix(f(2), 2)),
        ("M2(F3)", Algebra::matrix(f(3), 2)),
        ("F2[C4]", Algebra::group_algebra(f(2), &cyclic_group(4)).unwrap()),
        ("F2[S3]", Algebra::group_algebra(f(2), &dihedral_group(3)).unwrap()),
        ("F3[S3]", Algebra::group_algebra(f(3), &dihedral_group(3)).unwrap()),
    ]
}

#[test]
fn lie_derived_series_examples() {
    let comm = Algebra::field_algebra(f(3));
    assert_eq!(is_lie_solvable(&comm), (true, Some(1)));

    let t2 = Algebra::triangular(f(3), 2);
    let r = lie_derived_series(&t2, &t2.full_space());
    assert_eq!(r.sizes, vec![3, 1, 0]);
    assert_eq!(r.terms[1], t2.span(vec![t2.basis_elem(1)]));
    assert_eq!(r.length_or_class, Some(2));

    let m2 = Algebra::matrix(f(3), 2);
    let r = lie_derived_series(&m2, &m2.full_space());
    assert!(r.stabilized);
    assert_eq!(r.sizes, vec![4, 3, 3]);
    assert_eq!(is_lie_solvable(&m2), (false, None));
}

#[test]
fn lie_lower_central_series_examples() {
    let comm = Algebra::dual_numbers(f(2));
    assert_eq!(is_lie_nilpotent(&comm), (true, Some(1)));

    let t2 = Algebra::triangular(f(2), 2);
    let r = lie_lower_central_series(&t2, &t2.full_space());
    assert_eq!(r.sizes, vec![3, 1, 1]);
    assert_eq!(r.terms[1], t2.span(vec![t2.basis_elem(1)]));
    assert_eq!(is_lie_nilpotent(&t2), (false, None));

    // strict uppers of T_4 form a Lie algebra of class 3
    let t4 = Algebra::triangular(f(2), 4);
    let n = strict_upper(&t4, 4);
    let r = lie_lower_central_series(&t4, &n);
    assert_eq!(r.sizes, vec![6, 3, 1, 0]);
    assert_eq!(r.length_or_class, Some(3));
}

#[test]
fn engel_identity_examples() {
    let comm = Algebra::field_algebra(f(5));
    let v = check_engel_identity(&comm, &comm.full_space(), 1, &CheckMode::Exhaustive).unwrap();
    assert_eq!(v, IdentityVerdict::Holds { checked: 25 });

    let m2 = Algebra::matrix(f(2), 2);
    match check_engel_identity(&m2, &m2.full_space(), 3, &CheckMode::Exhaustive).unwrap() {
        IdentityVerdict::Counterexample { tuple } => {
            assert!(!m2.is_zero(&engel_bracket(&m2, &tuple[0], &tuple[1], 3)));
        }
        v => panic!("expected a counterexample, got {v:?}"),
    }

    let t3 = Algebra::triangular(f(2), 3);
    let n = strict_upper(&t3, 3);
    assert!(check_engel_identity(&t3, &n, 2, &CheckMode::Exhaustive).unwrap().holds());
    assert!(!check_engel_identity(&t3, &n, 1, &CheckMode::Exhaustive).unwrap().holds());
    assert_eq!(algebra_engel_length(&t3, &n, 10).unwrap(), Some(EngelLength::Exact(2)));

    let sampled = CheckMode::Sample { seed: 3, count: 500 };
    assert!(!check_engel_identity(&m2, &m2.full_space(), 3, &sampled).unwrap().holds());
    let witness = CheckMode::Witnesses(vec![vec![m2.basis_elem(1), m2.basis_elem(0)]]);
    assert!(!check_engel_identity(&m2, &m2.full_space(), 5, &witness).unwrap().holds());
}

#[test]
fn engel_length_matches_pair_enumeration() {
    for (name, alg) in small_corpus() {
        if alg.cardinality().unwrap() > 729 {
            continue;
        }
        let fast = algebra_engel_length(&alg, &alg.full_space(), 10).unwrap();
        let slow = engel_length_by_pairs(&alg, 10);
        match (fast, slow) {
            (Some(EngelLength::Exact(a)), Some(b)) => assert_eq!(a, b, "{name}"),
            (None, None) => {}
            other => panic!("{name}: {other:?}"),
        }
    }
}

#[test]
fn lie_nilpotent_algebras_are_engel_from_their_class() {
    for (name, alg) in small_corpus() {
        if let (true, Some(c)) = is_lie_nilpotent(&alg) {
            for n in c..c + 2 {
                let v = check_engel_identity(&alg, &alg.full_space(), n, &CheckMode::Exhaustive).unwrap();
                assert!(v.holds(), "{name} class {c}, n = {n}");
            }
        }
    }
}

#[test]
fn nonmatrix_identity_examples() {
    let comm = Algebra::field_algebra(f(3));
    assert!(check_nonmatrix_pi(&comm, &comm.full_space(), 0, &CheckMode::Exhaustive).unwrap().holds());
    let t2 = Algebra::triangular(f(2), 2);
    assert!(check_nonmatrix_pi(&t2, &t2.full_space(), 1, &CheckMode::Exhaustive).unwrap().holds());
    assert!(!check_nonmatrix_pi(&t2, &t2.full_space(), 0, &CheckMode::Exhaustive).unwrap().holds());
    let m2 = Algebra::matrix(f(2), 2);
    for t in 0..=3 {
        let v = check_nonmatrix_pi(&m2, &m2.full_space(), t, &CheckMode::Exhaustive).unwrap();
        let IdentityVerdict::Counterexample { tuple } = v else { panic!("M2(F2) satisfies the identity for t = {t}") };
        let c = m2.mul(&m2.bracket(&tuple[0], &tuple[1]), &tuple[2]);
        assert!(!m2.is_zero(&m2.pow(&c, 2u64.pow(t))));
    }
    // the witness from the idempotent E12 E21 = E11
    let w = CheckMode::Witnesses(vec![vec![m2.basis_elem(0), m2.basis_elem(1), m2.basis_elem(2)]]);
    assert!(!check_nonmatrix_pi(&m2, &m2.full_space(), 2, &w).unwrap().holds());
    let m3 = Algebra::matrix(f(3), 3);
    assert!(matches!(
        check_nonmatrix_pi(&m3, &m3.full_space(), 1, &CheckMode::Exhaustive),
        Err(AlgebraError::TooLarge { .. })
    ));
}

#[test]
fn zn_decomposition_examples() {
    let comm = Algebra::field_algebra(f(7));
    assert!(zn_decomposition_check(&comm, 1 << 12).unwrap().holds());

    let t2 = Algebra::triangular(f(2), 2);
    let r = zn_decomposition_check(&t2, 1 << 12).unwrap();
    assert!(r.closed_under_addition && r.is_ideal);
    assert!(!r.center_plus_span_is_a);
    assert_eq!(r.nilpotent_count, 2);
    // diag(1, 0) = e_0 is not covered
    assert_eq!(r.uncovered_basis, Some(0));

    let m2 = Algebra::matrix(f(2), 2);
    let r = zn_decomposition_check(&m2, 1 << 12).unwrap();
    assert!(!r.closed_under_addition);
    let (a, b) = r.addition_witness.unwrap();
    assert!(m2.is_nilpotent_elem(&a) && m2.is_nilpotent_elem(&b) && !m2.is_nilpotent_elem(&m2.add(&a, &b)));

    // Z + N holds with N the radical for the local algebra F2[C4]
    let local = Algebra::group_algebra(f(2), &cyclic_group(4)).unwrap();
    assert!(zn_decomposition_check(&local, 1 << 12).unwrap().holds());
}

#[test]
fn lie_solvability_survives_basis_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, alg) in small_corpus() {
        let fld = alg.field().clone();
        let n = alg.dim();
        let expected = (is_lie_solvable(&alg), is_lie_nilpotent(&alg));
        let mut changes = 0;
        while changes < 20 {
            let rows = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..fld.q())).collect()).collect();
            let p = Matrix::from_rows(rows);
            if linalg::inverse(&fld, &p).is_none() {
                continue;
            }
            let b = alg.change_basis(&p).unwrap();
            assert_eq!((is_lie_solvable(&b), is_lie_nilpotent(&b)), expected, "{name}");
            changes += 1;
        }
    }
}

#[test]
fn theorem_2_1_examples() {
    let limits = Limits::default();
    let t2 = Algebra::triangular(f(4), 2);
    let j = t2.radical().unwrap().radical;
    let w = Thm21Witness::single_step(&j);
    let v = theorem_2_1_evaluate(&t2, Some(&w), &limits);
    for c in ["thm2.1.cond1", "thm2.1.cond2", "thm2.1.cond3", "thm2.1.cond4"] {
        assert_eq!(v.value(c), CondValue::True, "{c}");
    }
    assert_eq!(v.consistency, Consistency::Consistent);
    let without = theorem_2_1_evaluate(&t2, None, &limits);
    assert_eq!(without.value("thm2.1.cond4"), CondValue::Unevaluated);
    assert_eq!(without.consistency, Consistency::Undetermined);

    // a chain that skips the radical is rejected
    let bad = Thm21Witness { chain: vec![Subspace::zero(3)], factors: vec![] };
    let v = theorem_2_1_evaluate(&t2, Some(&bad), &limits);
    assert_eq!(v.value("thm2.1.cond4"), CondValue::False);

    let m2 = Algebra::matrix(f(4), 2);
    let v = theorem_2_1_evaluate(&m2, None, &limits);
    assert_eq!(v.value("thm2.1.cond1"), CondValue::False);
    // in characteristic 2, D_1 = span{E12, E21, 1} and D_2 = span{1}
    assert_eq!(v.value("thm2.1.cond2"), CondValue::True);
    assert_eq!(v.condition("thm2.1.cond2").unwrap().detail["derived_series_dims"], serde_json::json!([4, 3, 1, 0]));
    assert_eq!(v.value("thm2.1.cond3"), CondValue::False);
    assert_eq!(v.consistency, Consistency::Consistent);

    let m2f3 = Algebra::matrix(f(3), 2);
    let v = theorem_2_1_evaluate(&m2f3, None, &limits);
    assert_eq!(v.value("thm2.1.cond1"), CondValue::True);
    assert_eq!(v.value("thm2.1.cond2"), CondValue::False);
    assert_eq!(v.consistency, Consistency::OutsideHypothesis);
    assert_eq!(v.condition("thm2.1.cond1").unwrap().detail["derived_series_orders"], serde_json::json!([48, 24, 8, 2, 1]));
}

#[test]
fn theorem_2_1_chain_with_two_steps() {
    // in T3(F4) the radical is the strict uppers, which is not commutative;
    // 0 < span{E13} < J works with witnesses {E13} and {E12, E23}
    let t3 = Algebra::triangular(f(4), 3);
    let j = t3.radical().unwrap().radical;
    let e = |k| t3.basis_elem(k);
    let j1 = t3.span(vec![e(2)]);
    let w = Thm21Witness {
        chain: vec![Subspace::zero(6), j1.clone(), j.clone()],
        factors: vec![vec![j1.clone()], vec![t3.span(vec![e(1)]), t3.span(vec![e(4)])]],
    };
    let v = theorem_2_1_evaluate(&t3, Some(&w), &Limits::default());
    assert_eq!(v.value("thm2.1.cond4"), CondValue::True);
    assert_eq!(v.consistency, Consistency::Consistent);
    assert_eq!(theorem_2_1_evaluate(&t3, Some(&Thm21Witness::single_step(&j)), &Limits::default()).value("thm2.1.cond4"), CondValue::False);
}

#[test]
fn theorem_2_2_commutative_example() {
    let a = Algebra::dual_numbers(f(3));
    let v = theorem_2_2_evaluate(&a, &Limits::default());
    for c in ["thm2.2.cond1", "thm2.2.cond2", "thm2.2.cond3", "thm2.2.cond4", "thm2.2.cond5", "thm2.2.zn"] {
        assert_eq!(v.value(c), CondValue::True, "{c}");
    }
    assert_eq!(v.condition("thm2.2.cond5").unwrap().detail["group_class"], 1);
    assert_eq!(v.consistency, Consistency::Consistent);

    let t2 = Algebra::triangular(f(3), 2);
    let v = theorem_2_2_evaluate(&t2, &Limits::default());
    assert_eq!(v.value("thm2.2.cond3"), CondValue::False);
    assert_eq!(v.value("thm2.2.cond4"), CondValue::False);
    assert_eq!(v.consistency, Consistency::Consistent);

    let f2 = Algebra::triangular(f(2), 2);
    assert_eq!(theorem_2_2_evaluate(&f2, &Limits::default()).consistency, Consistency::OutsideHypothesis);
}

#[test]
fn theorem_2_4_examples() {
    let limits = Limits::default();
    let t3 = Algebra::triangular(f(2), 3);
    let gens = strict_upper(&t3, 3).basis().to_vec();
    let v = theorem_2_4_evaluate(&t3, &gens, &limits).unwrap();
    assert_eq!(v.value("thm2.4.s_nilpotent"), CondValue::True);
    assert_eq!(v.condition("thm2.4.s_nilpotent").unwrap().detail["nilpotency_index"], 3);

    let t4 = Algebra::triangular(f(2), 4);
    let gens = strict_upper(&t4, 4).basis().to_vec();
    let v = theorem_2_4_evaluate(&t4, &gens, &limits).unwrap();
    assert_eq!(v.condition("thm2.4.s_nilpotent").unwrap().detail["nilpotency_index"], 4);
    assert_eq!(v.consistency, Consistency::Consistent);

    let m2 = Algebra::matrix(f(2), 2);
    let v = theorem_2_4_evaluate(&m2, &[m2.basis_elem(1)], &limits).unwrap();
    assert_eq!(v.condition("thm2.4.s_nilpotent").unwrap().detail["nilpotency_index"], 2);
    let v = theorem_2_4_evaluate(&m2, &[], &limits).unwrap();
    assert_eq!(v.condition("thm2.4.s_nilpotent").unwrap().detail["s_dim"], 0);

    // E12 and E21 bracket to a non-nilpotent diagonal element
    let err = theorem_2_4_evaluate(&m2, &[m2.basis_elem(1), m2.basis_elem(2)], &limits).unwrap_err();
    assert!(matches!(err, TheoremError::HypothesisFailed(_)));
    // GL2(F4) is neither solvable nor nilpotent
    let m2f4 = Algebra::matrix(f(4), 2);
    let err = theorem_2_4_evaluate(&m2f4, &[m2f4.basis_elem(1)], &limits).unwrap_err();
    assert!(matches!(err, TheoremError::HypothesisFailed(_)));
}

#[test]
fn verdicts_serialize_with_condition_names() {
    let a = Algebra::field_algebra(f(4));
    let v = theorem_2_1_evaluate(&a, None, &Limits::default());
    let s = serde_json::to_value(&v).unwrap();
    assert_eq!(s["theorem"], "thm2.1");
    assert_eq!(s["conditions"][0]["name"], "thm2.1.cond1");
    assert_eq!(s["conditions"][0]["value"], true);
    assert_eq!(s["conditions"][3]["value"], "unevaluated");
    assert_eq!(s["consistency"], "undetermined");
}
