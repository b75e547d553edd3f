//! Named families of small algebras over finite fields, used by the
//! scenario runner, the property tests and the benches.

use crate::algebra::{cyclic_group, dihedral_group, group_product, quaternion_group, Algebra};
use crate::fields::FiniteField;
use crate::restricted::{sweep_family, SweepFamily};

/// Field orders with a built-in construction.
pub const FIELD_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: Algebra<FiniteField>,
}

impl CorpusEntry {
    fn new(name: String, algebra: Algebra<FiniteField>) -> Self {
        CorpusEntry { name, algebra }
    }
}

fn field(q: u32) -> FiniteField {
    FiniteField::gf(q).expect("built-in field order")
}

fn fits(q: u32, dim: usize, max_card: u64) -> bool {
    (q as u64).checked_pow(dim as u32).is_some_and(|c| c <= max_card)
}

/// Groups of order at most 8, one per isomorphism type listed, by name.
pub fn small_groups() -> Vec<(String, Vec<Vec<usize>>)> {
    let mut out: Vec<(String, Vec<Vec<usize>>)> = (1..=8).map(|n| (format!("C{n}"), cyclic_group(n))).collect();
    let c2 = cyclic_group(2);
    out.push(("C2xC2".into(), group_product(&c2, &c2)));
    out.push(("C2xC4".into(), group_product(&c2, &cyclic_group(4))));
    out.push(("C2xC2xC2".into(), group_product(&group_product(&c2, &c2), &c2)));
    out.push(("S3".into(), dihedral_group(3)));
    out.push(("D4".into(), dihedral_group(4)));
    out.push(("Q8".into(), quaternion_group()));
    out
}

/// `M_n(F_q)` with `q^{n^2} <= max_card`.
pub fn matrix_algebras(max_card: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for q in FIELD_ORDERS {
            if fits(q, n * n, max_card) {
                out.push(CorpusEntry::new(format!("m{n}f{q}"), Algebra::matrix(field(q), n)));
            }
        }
    }
    out
}

/// Upper triangular `T_n(F_q)` with `|T_n(F_q)| <= max_card`.
pub fn triangular_algebras(max_card: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for q in FIELD_ORDERS {
            if fits(q, n * (n + 1) / 2, max_card) {
                out.push(CorpusEntry::new(format!("t{n}f{q}"), Algebra::triangular(field(q), n)));
            }
        }
    }
    out
}

/// `F_q[G]` for the groups of [`small_groups`] with `q^{|G|} <= max_card`.
pub fn group_algebras(max_card: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (name, table) in small_groups() {
        for q in FIELD_ORDERS {
            if fits(q, table.len(), max_card) {
                let alg = Algebra::group_algebra(field(q), &table).expect("valid Cayley table");
                out.push(CorpusEntry::new(format!("f{q}[{name}]"), alg));
            }
        }
    }
    out
}

pub fn dual_number_algebras() -> Vec<CorpusEntry> {
    FIELD_ORDERS.iter().map(|&q| CorpusEntry::new(format!("dual-f{q}"), Algebra::dual_numbers(field(q)))).collect()
}

/// `u(L)` for every presentation of both sweep families.
pub fn sweep_enveloping_algebras() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for fam in SweepFamily::ALL {
        for (i, l) in sweep_family(fam).into_iter().enumerate() {
            let u = l.build_u().expect("sweep presentations have an enveloping algebra");
            out.push(CorpusEntry::new(format!("{fam}#{i}"), u.algebra().as_ref().clone()));
        }
    }
    out
}

/// Everything above, restricted to `|A| <= max_card`.
pub fn full_corpus(max_card: u64) -> Vec<CorpusEntry> {
    let mut out = matrix_algebras(max_card);
    out.extend(triangular_algebras(max_card));
    out.extend(group_algebras(max_card));
    out.extend(dual_number_algebras());
    out.extend(sweep_enveloping_algebras().into_iter().filter(|e| e.algebra.cardinality().is_some_and(|c| c <= max_card)));
    out
}
