use super::*;
use crate::algebra::Algebra;
use crate::liestruct::{CondValue, Consistency, Limits};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fp(p: u32) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

fn abelian(f: &FiniteField, pmap: Vec<Vec<u32>>) -> RestrictedLieAlgebra<FiniteField> {
    let n = pmap.len();
    RestrictedLieAlgebra::new(f.clone(), vec![vec![vec![0; n]; n]; n], pmap).unwrap()
}

#[test]
fn validation_errors() {
    let f = fp(2);
    let bracket = vec![vec![vec![0, 0], vec![1, 0]], vec![vec![1, 0], vec![0, 0]]];
    let err = RestrictedLieAlgebra::new(f.clone(), bracket.clone(), vec![vec![0, 1], vec![0, 1]]).unwrap_err();
    assert_eq!(err, RestrictedError::NotRestricted { i: 0 });

    let f3 = fp(3);
    let not_alt = vec![vec![vec![0, 0], vec![1, 0]], vec![vec![1, 0], vec![0, 0]]];
    let err = RestrictedLieAlgebra::new(f3, not_alt, vec![vec![0, 0], vec![0, 0]]).unwrap_err();
    assert_eq!(err, RestrictedError::NotAntisymmetric { i: 0, j: 1 });

    // [e0, e1] = e1, [e0, e2] = e0, [e1, e2] = 0 over F_2 violates Jacobi.
    let z = vec![0, 0, 0];
    let mut t = vec![vec![z.clone(); 3]; 3];
    t[0][1] = vec![0, 1, 0];
    t[1][0] = vec![0, 1, 0];
    t[0][2] = vec![1, 0, 0];
    t[2][0] = vec![1, 0, 0];
    let err = RestrictedLieAlgebra::new(f, t, vec![z.clone(), z.clone(), z]).unwrap_err();
    assert_eq!(err, RestrictedError::JacobiFails { i: 0, j: 1, k: 2 });

    assert!(matches!(RestrictedLieAlgebra::new(fp(2), vec![], vec![vec![0]]), Err(RestrictedError::BadShape(_))));
}

#[test]
fn klein_enveloping_table() {
    let l = klein();
    let u = l.build_u().unwrap();
    let a = u.algebra();
    assert_eq!(a.dim(), 4);
    // basis 1, x, y, xy
    let e = |i| a.basis_elem(i);
    let (x, y, xy) = (e(1), e(2), e(3));
    assert!(a.is_zero(&a.mul(&x, &x)));
    assert_eq!(a.mul(&y, &y), y);
    assert_eq!(a.mul(&x, &y), xy);
    assert_eq!(a.mul(&y, &x), a.add(&xy, &x));
    assert_eq!(u.fmt_elem(&a.add(&xy, &x)), "x + xy");
}

#[test]
fn small_enveloping_algebras() {
    let f2 = fp(2);
    let u = abelian(&f2, vec![vec![0]]).build_u().unwrap();
    assert_eq!(u.algebra().as_ref(), &Algebra::dual_numbers(f2));

    let f3 = fp(3);
    let u = abelian(&f3, vec![vec![1]]).build_u().unwrap();
    let a = u.algebra();
    let x = a.basis_elem(1);
    assert_eq!(a.pow(&x, 3), x);
    assert_eq!(a.minimal_polynomial(&x), vec![0, 2, 0, 1]);
}

#[test]
fn embed_project_and_p_power() {
    let l = klein();
    let u = l.build_u().unwrap();
    assert_eq!(u.embed(&[0, 0]), vec![0; 4]);
    assert_eq!(u.p_power(&[1, 0]).unwrap(), vec![0, 0]);
    assert_eq!(u.p_power(&[0, 1]).unwrap(), vec![0, 1]);
    assert_eq!(u.p_power(&[1, 1]).unwrap(), vec![1, 1]);
    assert_eq!(u.project(&u.algebra().basis_elem(3)), Err(RestrictedError::NotInL));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = fp(3);
    for l in presentations(&f, 2).into_iter().step_by(7) {
        let u = l.build_u().unwrap();
        let a = u.algebra();
        for _ in 0..10 {
            let v: Vec<u32> = (0..2).map(|_| f.random_elem(&mut rng)).collect();
            let w: Vec<u32> = (0..2).map(|_| f.random_elem(&mut rng)).collect();
            assert_eq!(u.project(&u.embed(&v)).unwrap(), v);
            assert_eq!(u.embed(&l.bracket(&v, &w)), a.bracket(&u.embed(&v), &u.embed(&w)));
            assert_eq!(u.embed(&u.p_power(&v).unwrap()), a.pow(&u.embed(&v), 3));
        }
    }
}

#[test]
fn p_polynomials() {
    let u = klein().build_u().unwrap();
    assert_eq!(u.p_polynomial(&[1, 0]).unwrap().coeffs, vec![0, 1]);
    let py = u.p_polynomial(&[0, 1]).unwrap();
    assert_eq!(py.coeffs, vec![1, 1]);
    assert!(!py.is_p_nilpotent(u.field()));
    assert!(u.is_p_nilpotent(&[1, 0]).unwrap());
    assert_eq!(u.p_polynomial(&[0, 0]).unwrap().coeffs, vec![1]);

    let l = lemma32_counterexample(2).unwrap();
    let u = l.build_u().unwrap();
    let f = l.field().clone();
    let y = vec![f.zero(), f.one()];
    // y^[2] = t x and y^[4] = t^2 x = t y^[2], so y^[4] + t y^[2] = 0
    let pp = u.p_polynomial(&y).unwrap();
    assert_eq!(pp.coeffs, vec![f.zero(), f.t(), f.one()]);
    assert_eq!(pp.associative(&f), u.algebra().minimal_polynomial(&u.embed(&y)));
}

#[test]
fn p_polynomial_matches_minimal_polynomial_on_sweeps() {
    for fam in SweepFamily::ALL {
        let f = fp(fam.prime());
        for l in sweep_family(fam).into_iter().step_by(5) {
            let u = l.build_u().unwrap();
            let full = l.full_space();
            for v in subspace_elements(&f, &full, 1 << 10).unwrap() {
                let pp = u.p_polynomial(&v).unwrap();
                assert_eq!(pp.associative(&f), u.algebra().minimal_polynomial(&u.embed(&v)));
            }
        }
    }
}

/// Naive count: every alternating table and every p-map, kept when the
/// constructor accepts it and the enveloping algebra builds.
fn naive_count(p: u32, n: usize) -> usize {
    let f = fp(p);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let tables = (p as usize).pow((pairs.len() * n) as u32);
    let pmaps = (p as usize).pow((n * n) as u32);
    let digits = |mut idx: usize, len: usize| -> Vec<u32> {
        (0..len)
            .map(|_| {
                let d = (idx % p as usize) as u32;
                idx /= p as usize;
                d
            })
            .collect()
    };
    let mut count = 0;
    for t in 0..tables {
        let c = digits(t, pairs.len() * n);
        let mut bracket = vec![vec![vec![0u32; n]; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            for r in 0..n {
                bracket[i][j][r] = c[k * n + r];
                bracket[j][i][r] = (p - c[k * n + r]) % p;
            }
        }
        for m in 0..pmaps {
            let d = digits(m, n * n);
            let pmap = (0..n).map(|i| d[i * n..(i + 1) * n].to_vec()).collect();
            if let Ok(l) = RestrictedLieAlgebra::new(f.clone(), bracket.clone(), pmap) {
                if l.build_u().is_ok() {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn sweep_counts() {
    let f2 = fp(2);
    let f3 = fp(3);
    assert_eq!(presentations(&f2, 1).len(), naive_count(2, 1));
    assert_eq!(presentations(&f2, 2).len(), naive_count(2, 2));
    assert_eq!(presentations(&f3, 1).len(), naive_count(3, 1));
    assert_eq!(presentations(&f3, 2).len(), naive_count(3, 2));
    assert_eq!(presentations(&f2, 1).len(), 2);
    assert_eq!(presentations(&f2, 2).len(), 19);
    assert_eq!(presentations(&f3, 1).len(), 3);
    assert_eq!(presentations(&f3, 2).len(), 89);
    assert_eq!(presentations(&f2, 3).len(), 911);
    assert_eq!(sweep_family(SweepFamily::F2D3).len(), 932);
    assert_eq!(sweep_family(SweepFamily::F3D2).len(), 92);
    let all = sweep_family(SweepFamily::F2D3);
    for (i, a) in all.iter().enumerate() {
        assert!(all[i + 1..].iter().all(|b| b != a));
    }
}

#[test]
fn pbw_certificate_on_f2_dim3() {
    for l in presentations(&fp(2), 3) {
        let u = l.build_u().unwrap();
        assert_eq!(u.algebra().dim(), 8);
    }
}

#[test]
fn p_sets() {
    let f2 = fp(2);
    let u = abelian(&f2, vec![vec![0, 0], vec![0, 0]]).build_u().unwrap();
    let p = u.compute_p().unwrap();
    assert!(p.subspace().unwrap().is_full());

    let u = klein().build_u().unwrap();
    let p = u.compute_p().unwrap();
    assert_eq!(p.subspace().unwrap(), &klein().span(vec![vec![1, 0]]));
    let pu = u.pl_ideal(&p).unwrap();
    assert_eq!(pu, u.algebra().span(vec![u.algebra().basis_elem(1), u.algebra().basis_elem(3)]));

    let l = lemma32_counterexample(2).unwrap();
    let u = l.build_u().unwrap();
    match u.compute_p().unwrap() {
        PSet::Subspace { space, exact } => {
            assert!(space.is_zero());
            assert!(exact);
        }
        other => panic!("unexpected {other:?}"),
    }

    // over F_3 the p-map of an abelian L is semilinear: with x -> x, y -> y
    // only 0 is p-nilpotent, with x -> x, y -> x the kernel is span{y - x}
    let f3 = fp(3);
    let u = abelian(&f3, vec![vec![1, 0], vec![0, 1]]).build_u().unwrap();
    assert!(u.compute_p().unwrap().subspace().unwrap().is_zero());
    let l = abelian(&f3, vec![vec![1, 0], vec![1, 0]]);
    let u = l.build_u().unwrap();
    assert_eq!(u.compute_p().unwrap().subspace().unwrap(), &l.span(vec![vec![2, 1]]));
}

#[test]
fn p_set_oracle_on_sweeps() {
    // brute force: v is p-nilpotent iff some v^{[p]^k} with k <= dim vanishes
    for fam in SweepFamily::ALL {
        let f = fp(fam.prime());
        for l in sweep_family(fam).into_iter().step_by(3) {
            let u = l.build_u().unwrap();
            let a = u.algebra();
            let p = fam.prime() as u64;
            let mut brute = Vec::new();
            for v in subspace_elements(&f, &l.full_space(), 1 << 10).unwrap() {
                let mut x = u.embed(&v);
                for _ in 0..=l.dim() {
                    x = a.pow(&x, p);
                }
                if a.is_zero(&x) {
                    brute.push(v);
                }
            }
            match u.compute_p().unwrap() {
                PSet::Subspace { space, .. } => {
                    assert_eq!(brute.len() as u64, f.order().unwrap().pow(space.dim() as u32));
                    assert!(brute.iter().all(|v| space.contains(&f, v)));
                }
                PSet::Set { elements, witness } => {
                    assert_eq!(elements, brute);
                    let (NonClosure::Sum(x, y) | NonClosure::Bracket(x, y)) = witness;
                    assert!(brute.contains(&x) && brute.contains(&y));
                }
            }
        }
    }
}

#[test]
fn subalgebras_and_quotients() {
    let l = klein();
    let u = l.build_u().unwrap();
    assert_eq!(l.restricted_subalgebra(&u, &[vec![1, 0]]).unwrap(), l.span(vec![vec![1, 0]]));
    assert_eq!(l.derived_subalgebra(), l.span(vec![vec![1, 0]]));
    assert_eq!(l.is_nilpotent(), (false, None));
    let q = l.quotient(&u, &l.span(vec![vec![1, 0]])).unwrap();
    assert_eq!(q.dim(), 1);
    assert_eq!(q.pmap_table(), &[vec![1]]);
    assert_eq!(l.quotient(&u, &l.span(vec![vec![0, 1]])), Err(RestrictedError::NotRestrictedIdeal));

    // Heisenberg over F_3: [x, y] = z, p-map zero
    let f = fp(3);
    let mut t = vec![vec![vec![0; 3]; 3]; 3];
    t[0][1] = vec![0, 0, 1];
    t[1][0] = vec![0, 0, 2];
    let h = RestrictedLieAlgebra::new(f, t, vec![vec![0; 3]; 3]).unwrap();
    assert_eq!(h.is_nilpotent(), (true, Some(2)));
}

#[test]
fn lemma_3_2_instances() {
    let limits = Limits::default();
    let v = lemma_3_2_check(&klein().build_u().unwrap(), &limits).unwrap();
    assert!(v.hypothesis_holds);
    assert_eq!(v.value("lemma3.2.n_equals_pu"), CondValue::True);
    assert_eq!(v.consistency, Consistency::Consistent);

    let f3 = fp(3);
    let u = abelian(&f3, vec![vec![1]]).build_u().unwrap();
    let v = lemma_3_2_check(&u, &limits).unwrap();
    assert_eq!(v.consistency, Consistency::Consistent);
    assert_eq!(v.condition("lemma3.2.n_equals_pu").unwrap().detail["nilpotent_count"], 1);

    let u = lemma32_counterexample(2).unwrap().build_u().unwrap();
    let v = lemma_3_2_check(&u, &limits).unwrap();
    assert_eq!(v.consistency, Consistency::OutsideHypothesis);
    assert_eq!(v.value("lemma3.2.p_is_zero"), CondValue::True);
    let w = v.condition("lemma3.2.nilpotent_witness").unwrap();
    assert_eq!(w.value, CondValue::True);
    assert_eq!(w.detail["z"], "y + xy");
    assert_eq!(w.detail["square_zero"], true);

    let u = lemma32_counterexample(3).unwrap().build_u().unwrap();
    let v = lemma_3_2_check(&u, &limits).unwrap();
    assert_eq!(v.value("lemma3.2.p_is_zero"), CondValue::True);
    assert_eq!(v.value("lemma3.2.nilpotent_witness"), CondValue::True);
}

#[test]
fn lemma_3_2_holds_across_sweeps() {
    let limits = Limits::default();
    let mut in_hypothesis = 0;
    for fam in SweepFamily::ALL {
        for l in sweep_family(fam) {
            let v = lemma_3_2_check(&l.build_u().unwrap(), &limits).unwrap();
            if v.hypothesis_holds {
                in_hypothesis += 1;
                assert_eq!(v.consistency, Consistency::Consistent, "{:?}", l.to_json());
            }
        }
    }
    assert!(in_hypothesis > 100);
}

#[test]
fn lemma_3_5_instances() {
    let limits = Limits::default();
    let f2 = fp(2);
    let u = abelian(&f2, vec![vec![0, 0], vec![0, 0]]).build_u().unwrap();
    let v = lemma_3_5_witness_check(&u, 0, 1, &limits).unwrap();
    assert_eq!(v.value("lemma3.5.w_square_zero"), CondValue::True);
    assert!(!v.hypothesis_holds);

    let v = lemma_3_5_witness_check(&klein().build_u().unwrap(), 1, 0, &limits).unwrap();
    assert_eq!(v.value("lemma3.5.w_square_zero"), CondValue::True);
    assert_eq!(v.value("lemma3.5.reduced"), CondValue::False);
    assert_eq!(v.consistency, Consistency::OutsideHypothesis);
    assert_ne!(v.condition("lemma3.5.w_square_zero").unwrap().detail["w"], "0");

    let f3 = fp(3);
    let u = abelian(&f3, vec![vec![1, 0], vec![0, 1]]).build_u().unwrap();
    let v = lemma_3_5_witness_check(&u, 0, 1, &limits).unwrap();
    assert!(v.hypothesis_holds);
    assert_eq!(v.consistency, Consistency::Consistent);
    assert_eq!(v.value("lemma3.5.w_zero"), CondValue::True);
}

#[test]
fn lemma_3_5_square_zero_on_sweeps() {
    let limits = Limits::default();
    for fam in SweepFamily::ALL {
        for l in sweep_family(fam).into_iter().step_by(4) {
            let u = l.build_u().unwrap();
            for i in 0..l.dim() {
                for j in 0..l.dim() {
                    let v = lemma_3_5_witness_check(&u, i, j, &limits).unwrap();
                    assert_eq!(v.value("lemma3.5.w_square_zero"), CondValue::True);
                    assert_ne!(v.consistency, Consistency::Inconsistent);
                }
            }
        }
    }
}

#[test]
fn corollary_instances() {
    let limits = Limits::default();
    let v = corollary_evaluate(&klein().build_u().unwrap(), Corollary::NilpotentUnits, &limits);
    assert!(!v.hypothesis_holds);
    assert_eq!(v.value("cor3.10.cond1"), CondValue::True);
    assert_eq!(v.value("cor3.10.cond2"), CondValue::False);

    let f5 = fp(5);
    let u = abelian(&f5, vec![vec![0]]).build_u().unwrap();
    let v = corollary_evaluate(&u, Corollary::SolvableUnits, &limits);
    assert!(v.hypothesis_holds);
    assert_eq!(v.consistency, Consistency::Consistent);
    for k in 1..=3 {
        assert_eq!(v.value(&format!("cor3.8.cond{k}")), CondValue::True);
    }
    assert_eq!(Corollary::parse("3.10"), Some(Corollary::NilpotentUnits));
    assert_eq!(Corollary::parse("cor3.9"), Some(Corollary::EngelUnits));
}

#[test]
fn corollaries_consistent_over_f3() {
    let limits = Limits::default();
    for l in sweep_family(SweepFamily::F3D2) {
        let u = l.build_u().unwrap();
        for c in [Corollary::EngelUnits, Corollary::NilpotentUnits] {
            let v = corollary_evaluate(&u, c, &limits);
            assert!(v.hypothesis_holds);
            assert_eq!(v.consistency, Consistency::Consistent, "{c} {:?}", l.to_json());
        }
    }
}

#[test]
fn json_round_trip() {
    let l = klein();
    let json = l.to_json();
    let text = serde_json::to_string(&json).unwrap();
    match AnyRestricted::parse_json(&text).unwrap() {
        AnyRestricted::Finite(m) => assert_eq!(m, l),
        other => panic!("unexpected {other:?}"),
    }
    let c = lemma32_counterexample(2).unwrap();
    let text = serde_json::to_string(&c.to_json()).unwrap();
    match AnyRestricted::parse_json(&text).unwrap() {
        AnyRestricted::RationalFunction(m) => assert_eq!(m, c),
        other => panic!("unexpected {other:?}"),
    }
    assert!(AnyRestricted::parse_json("{\"dim\": 1}").is_err());
}
