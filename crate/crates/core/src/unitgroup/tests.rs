use std::collections::HashSet;

use super::*;
use crate::algebra::{cyclic_group, dihedral_group};
use crate::fields::FiniteField;

fn f(q: u32) -> FiniteField {
    FiniteField::gf(q).unwrap()
}

fn gl(q: u32, n: usize) -> UnitGroup<FiniteField> {
    UnitGroup::gl(f(q), n).unwrap()
}

/// `1 + c E_ij` in `M_n`.
fn transvection(n: usize, i: usize, j: usize, c: u32) -> Vec<u32> {
    let mut x = vec![0u32; n * n];
    for k in 0..n {
        x[k * n + k] = 1;
    }
    x[i * n + j] = c;
    x
}

/// Commutator subgroup from the closure of every pairwise commutator.
fn derived_by_all_pairs(g: &UnitGroup<FiniteField>) -> UnitGroup<FiniteField> {
    let mut comms = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            comms.push(g.commutator(x, y));
        }
    }
    g.subgroup(&comms)
}

fn key_set(g: &UnitGroup<FiniteField>) -> HashSet<Vec<u32>> {
    g.elements().iter().cloned().collect()
}

#[test]
fn enumerate_small_unit_groups() {
    let f3 = Arc::new(Algebra::field_algebra(f(3)));
    assert_eq!(UnitGroup::enumerate(f3, 1 << 20).unwrap().order(), 2);
    let t2 = Arc::new(Algebra::triangular(f(2), 2));
    let u = UnitGroup::enumerate(t2, 1 << 20).unwrap();
    assert_eq!(u.order(), 2);
    assert_eq!(u.elements()[1], vec![1, 1, 1]);
    assert_eq!(gl(2, 2).order(), 6);
    assert_eq!(gl(3, 2).order(), 48);
    let gl1 = gl(5, 1);
    assert_eq!(gl1.order(), 4);
    assert!(gl1.is_abelian());
    assert_eq!(gl1.exponent(), 4);
}

#[test]
fn gl_orders_match_the_counting_formula() {
    for (q, n) in [(2u32, 2usize), (3, 2), (4, 2), (5, 2), (2, 3)] {
        let qn = (q as usize).pow(n as u32);
        let expected: usize = (0..n).map(|i| qn - (q as usize).pow(i as u32)).product();
        assert_eq!(gl(q, n).order(), expected, "GL_{n}(F_{q})");
    }
}

#[test]
fn local_algebras_have_units_outside_the_radical() {
    // F_2[C_4] and F_3[C_3] are local with residue field F_p
    for (p, n) in [(2u32, 4usize), (3, 3), (2, 2)] {
        let a = Arc::new(Algebra::group_algebra(f(p), &cyclic_group(n)).unwrap());
        let j = a.radical().unwrap().radical;
        let units = UnitGroup::enumerate(a.clone(), 1 << 20).unwrap();
        let card = a.cardinality().unwrap();
        let non_units = card as usize - units.order();
        assert_eq!(non_units, (p as usize).pow(j.dim() as u32));
        assert_eq!(units.order(), (p as usize - 1) * (p as usize).pow(j.dim() as u32));
    }
}

#[test]
fn adjoint_groups() {
    let t2 = Arc::new(Algebra::triangular(f(2), 2));
    let zero = Subspace::zero(3);
    assert!(UnitGroup::adjoint(t2.clone(), &zero, 1 << 20).unwrap().is_trivial());
    let e12 = t2.span(vec![vec![0, 1, 0]]);
    assert_eq!(UnitGroup::adjoint(t2.clone(), &e12, 1 << 20).unwrap().order(), 2);
    let e11 = t2.span(vec![vec![1, 0, 0]]);
    assert_eq!(UnitGroup::adjoint(t2, &e11, 1 << 20).unwrap_err(), AlgebraError::NotNil);

    let t3 = Arc::new(Algebra::triangular(f(2), 3));
    // pairs (0,0),(0,1),(0,2),(1,1),(1,2),(2,2)
    let strict = t3.span(vec![vec![0, 1, 0, 0, 0, 0], vec![0, 0, 1, 0, 0, 0], vec![0, 0, 0, 0, 1, 0]]);
    let h = UnitGroup::adjoint(t3.clone(), &strict, 1 << 20).unwrap();
    assert_eq!(h.order(), 8);
    assert!(!h.is_abelian());
    let a = vec![1, 1, 0, 1, 0, 1];
    let b = vec![1, 0, 0, 1, 1, 1];
    assert_ne!(h.mul(&a, &b), h.mul(&b, &a));
    assert_eq!(h, UnitGroup::enumerate(t3, 1 << 20).unwrap());
}

impl PartialEq for UnitGroup<FiniteField> {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys
    }
}

#[test]
fn subgroup_closure_examples() {
    let g = gl(2, 2);
    assert!(g.subgroup(&[g.algebra().one().to_vec()]).is_trivial());
    let t = transvection(2, 0, 1, 1);
    let c2 = g.subgroup(&[t.clone()]);
    assert_eq!(c2.order(), 2);
    assert_eq!(g.element_order(&t), 2);
    let full = g.subgroup(&[t, transvection(2, 1, 0, 1)]);
    assert_eq!(full.order(), 6);
}

#[test]
fn derived_series_of_general_linear_groups() {
    let g3 = gl(3, 2);
    let orders: Vec<usize> = g3.derived_series().iter().map(|h| h.order()).collect();
    assert_eq!(orders, vec![48, 24, 8, 2, 1]);
    assert_eq!(g3.is_solvable(), (true, Some(4)));

    let g4 = gl(4, 2);
    let series = g4.derived_series();
    let orders: Vec<usize> = series.iter().map(|h| h.order()).collect();
    assert_eq!(orders, vec![180, 60]);
    assert_eq!(g4.is_solvable(), (false, None));
    // the stable term is SL_2(F_4): every element has determinant 1
    let fld = f(4);
    for x in series[1].elements() {
        let det = fld.sub(&fld.mul(&x[0], &x[3]), &fld.mul(&x[1], &x[2]));
        assert_eq!(det, 1);
    }

    let abelian = gl(5, 1);
    assert_eq!(abelian.is_solvable(), (true, Some(1)));
    assert_eq!(abelian.derived_series().len(), 2);
}

#[test]
fn derived_terms_agree_with_all_pairs_closure_and_are_normal() {
    for g in [gl(2, 2), gl(3, 2), gl(4, 2)] {
        let series = g.derived_series();
        for w in series.windows(2) {
            assert_eq!(key_set(&w[1]), key_set(&derived_by_all_pairs(&w[0])));
        }
        if g.order() <= 500 {
            for h in &series {
                for x in g.elements() {
                    let xi = g.inv(x);
                    for y in h.elements() {
                        assert!(h.contains(&g.mul(&g.mul(&xi, y), x)));
                    }
                }
            }
        }
    }
}

#[test]
fn lower_central_series_examples() {
    let trivial = gl(2, 1);
    assert!(trivial.is_trivial());
    assert_eq!(trivial.is_nilpotent(), (true, Some(0)));

    let heis = UnitGroup::enumerate(Arc::new(Algebra::triangular(f(2), 3)), 1 << 20).unwrap();
    let lcs = heis.lower_central_series();
    assert_eq!(lcs.iter().map(|h| h.order()).collect::<Vec<_>>(), vec![8, 2, 1]);
    assert_eq!(heis.is_nilpotent(), (true, Some(2)));
    // gamma_2 is the center
    let center: Vec<&Vec<u32>> =
        heis.elements().iter().filter(|z| heis.elements().iter().all(|x| heis.mul(x, z) == heis.mul(z, x))).collect();
    assert_eq!(center.len(), 2);
    assert!(center.iter().all(|z| lcs[1].contains(z)));

    let g3 = gl(3, 2);
    let lcs = g3.lower_central_series();
    assert_eq!(lcs.iter().map(|h| h.order()).collect::<Vec<_>>(), vec![48, 24]);
    assert_eq!(g3.is_nilpotent(), (false, None));
}

#[test]
fn word_identity_examples() {
    let comm = GroupWord::parse("(x1,x2)").unwrap();
    let abelian = gl(5, 1);
    assert_eq!(abelian.check_word_identity(&comm, WordCheckMode::Exhaustive).unwrap(), IdentityVerdict::Holds { checked: 16 });

    let t2 = Algebra::triangular(f(2), 2);
    let sum = Arc::new(t2.direct_sum(&Algebra::field_algebra(f(2))));
    let g = UnitGroup::enumerate(sum, 1 << 20).unwrap();
    let sq = GroupWord::parse("(x1,x2)^2").unwrap();
    assert!(g.check_word_identity(&sq, WordCheckMode::Exhaustive).unwrap().holds());

    let s3 = gl(2, 2);
    match s3.check_word_identity(&comm, WordCheckMode::Exhaustive).unwrap() {
        IdentityVerdict::Counterexample { tuple } => {
            assert_ne!(s3.commutator(&tuple[0], &tuple[1]), s3.algebra().one());
            // first failing pair in scan order
            let first = s3
                .elements()
                .iter()
                .flat_map(|x| s3.elements().iter().map(move |y| (x, y)))
                .find(|(x, y)| s3.mul(x, y) != s3.mul(y, x))
                .unwrap();
            assert_eq!((&tuple[0], &tuple[1]), first);
        }
        v => panic!("expected a counterexample, got {v:?}"),
    }
    let sampled = s3.check_word_identity(&comm, WordCheckMode::Sample { seed: 7, count: 200 }).unwrap();
    assert!(!sampled.holds());
    assert_eq!(sampled, s3.check_word_identity(&comm, WordCheckMode::Sample { seed: 7, count: 200 }).unwrap());

    let big = gl(4, 2);
    let w = GroupWord::derived_word(3);
    assert!(matches!(big.check_word_identity(&w, WordCheckMode::Exhaustive), Err(AlgebraError::TooLarge { .. })));
}

#[test]
fn derived_words_detect_derived_length() {
    let groups = [
        gl(2, 2),
        gl(3, 1),
        UnitGroup::enumerate(Arc::new(Algebra::triangular(f(2), 3)), 1 << 20).unwrap(),
        UnitGroup::enumerate(Arc::new(Algebra::group_algebra(f(3), &dihedral_group(3)).unwrap()), 1 << 20).unwrap(),
    ];
    for g in &groups {
        let (_, len) = g.is_solvable();
        let len = len.unwrap();
        for d in 1..=2 {
            if (g.order() as u64).pow(1 << d) > 50_000_000 {
                continue;
            }
            let holds = g.check_word_identity(&GroupWord::derived_word(d), WordCheckMode::Exhaustive).unwrap().holds();
            assert_eq!(holds, len <= d, "order {} derived length {len}, depth {d}", g.order());
        }
    }
}

#[test]
fn engel_reports() {
    let abelian = gl(5, 1);
    let r = abelian.engel_report(DEFAULT_ENGEL_CAP);
    assert!(r.engel);
    assert_eq!(r.min_length, Some(EngelLength::Exact(1)));

    let heis = UnitGroup::enumerate(Arc::new(Algebra::triangular(f(2), 3)), 1 << 20).unwrap();
    let r = heis.engel_report(DEFAULT_ENGEL_CAP);
    assert_eq!(r, GroupEngelReport { engel: true, nilpotency_class: Some(2), min_length: Some(EngelLength::Exact(2)) });
    assert_eq!(heis.engel_report(1).min_length, Some(EngelLength::NotWithinCap));
    for n in 1..=3 {
        let holds = heis.check_word_identity(&GroupWord::engel(n), WordCheckMode::Exhaustive).unwrap().holds();
        assert_eq!(holds, n >= 2);
    }

    let r = gl(3, 2).engel_report(DEFAULT_ENGEL_CAP);
    assert!(!r.engel);
    assert_eq!(r.min_length, None);
}
