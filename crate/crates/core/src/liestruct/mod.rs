//! Lie structure of associative algebras under `[a, b] = ab - ba`: derived
//! and lower central series, Engel and non-matrix identities, the `Z + N`
//! decomposition, and evaluators for the unit-group theorems.
//!
//! Most operations take a `domain` subspace so that they apply both to a
//! whole algebra and to a non-unital subalgebra such as a nil ideal.

pub(crate) mod theorems;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraError, Odometer};
use crate::fields::Field;
use crate::linalg::{self, Matrix, Subspace};
use crate::unitgroup::{EngelLength, IdentityVerdict};

pub use theorems::{
    lie_closure, theorem_2_1_evaluate, theorem_2_2_evaluate, theorem_2_4_evaluate, CondValue, Condition, Consistency, Limits,
    TheoremError, TheoremVerdict, Thm21Witness,
};

/// Bound on the number of pairs (or triples) scanned exhaustively.
pub const MAX_IDENTITY_TUPLES: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LieDerived,
    LieLowerCentral,
    GroupDerived,
    GroupLcs,
}

/// Terms of a descending series. When the series stabilizes at a nonzero
/// term, that term appears twice at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport<E> {
    pub kind: SeriesKind,
    /// Dimensions (Lie series) or orders (group series) of the terms.
    pub sizes: Vec<usize>,
    /// The subspaces themselves; empty for group series.
    pub terms: Vec<Subspace<E>>,
    pub stabilized: bool,
    /// Derived length or nilpotency class when the series reaches zero.
    pub length_or_class: Option<usize>,
}

impl<E> SeriesReport<E> {
    pub fn reaches_zero(&self) -> bool {
        !self.stabilized
    }

    fn from_terms(kind: SeriesKind, sizes: Vec<usize>, terms: Vec<Subspace<E>>, trivial_is_zero_size: usize) -> Self {
        let last = *sizes.last().unwrap();
        let stabilized = last != trivial_is_zero_size;
        let length_or_class = (!stabilized).then(|| sizes.len() - 1);
        SeriesReport { kind, sizes, terms, stabilized, length_or_class }
    }
}

/// How identities are checked: every tuple in scan order, seeded random
/// tuples, or caller-supplied tuples (the only option over infinite fields).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckMode<E> {
    Exhaustive,
    Sample { seed: u64, count: u64 },
    Witnesses(Vec<Vec<Vec<E>>>),
}

/// `D_0 = S`, `D_{k+1} = [D_k, D_k]`. The length is the least `k` with
/// `D_k = 0`, so a nonzero commutative domain has length 1.
pub fn lie_derived_series<F: Field>(alg: &Algebra<F>, domain: &Subspace<F::Elem>) -> SeriesReport<F::Elem> {
    descend(alg, domain, SeriesKind::LieDerived, |d| alg.bracket_space(d, d))
}

/// `L_1 = S`, `L_{k+1} = [L_k, S]`. The class is the least `c` with
/// `L_{c+1} = 0`.
pub fn lie_lower_central_series<F: Field>(alg: &Algebra<F>, domain: &Subspace<F::Elem>) -> SeriesReport<F::Elem> {
    descend(alg, domain, SeriesKind::LieLowerCentral, |l| alg.bracket_space(l, domain))
}

fn descend<F: Field>(
    alg: &Algebra<F>,
    domain: &Subspace<F::Elem>,
    kind: SeriesKind,
    step: impl Fn(&Subspace<F::Elem>) -> Subspace<F::Elem>,
) -> SeriesReport<F::Elem> {
    let f = alg.field();
    let mut terms = vec![domain.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = step(last);
        let stable = next.dim() == last.dim() && next.is_subspace_of(f, last);
        terms.push(next);
        if stable {
            break;
        }
    }
    let sizes = terms.iter().map(|t| t.dim()).collect();
    SeriesReport::from_terms(kind, sizes, terms, 0)
}

pub fn is_lie_solvable<F: Field>(alg: &Algebra<F>) -> (bool, Option<usize>) {
    let r = lie_derived_series(alg, &alg.full_space());
    (r.reaches_zero(), r.length_or_class)
}

pub fn is_lie_nilpotent<F: Field>(alg: &Algebra<F>) -> (bool, Option<usize>) {
    let r = lie_lower_central_series(alg, &alg.full_space());
    (r.reaches_zero(), r.length_or_class)
}

/// Derived series of a unit group in report form.
pub fn group_derived_report<F: Field>(g: &crate::unitgroup::UnitGroup<F>) -> SeriesReport<F::Elem> {
    group_report(SeriesKind::GroupDerived, g.derived_series().iter().map(|h| h.order()).collect())
}

/// Lower central series of a unit group in report form.
pub fn group_lcs_report<F: Field>(g: &crate::unitgroup::UnitGroup<F>) -> SeriesReport<F::Elem> {
    group_report(SeriesKind::GroupLcs, g.lower_central_series().iter().map(|h| h.order()).collect())
}

fn group_report<E>(kind: SeriesKind, mut sizes: Vec<usize>) -> SeriesReport<E> {
    let last = *sizes.last().unwrap();
    if last != 1 {
        sizes.push(last);
    }
    SeriesReport::from_terms(kind, sizes, Vec::new(), 1)
}

/// Elements of `domain` in scan order of their coordinates.
fn domain_elements<F: Field>(alg: &Algebra<F>, domain: &Subspace<F::Elem>) -> Vec<Vec<F::Elem>> {
    let f = alg.field();
    let mut out = Vec::new();
    let mut odo = Odometer::new(f, domain.dim());
    let mut current = alg.zero();
    loop {
        out.push(current.clone());
        match odo.advance() {
            None => return out,
            Some(changes) => {
                for (pos, delta) in changes {
                    linalg::axpy(f, &mut current, delta, &domain.basis()[*pos]);
                }
            }
        }
    }
}

fn domain_card<F: Field>(alg: &Algebra<F>, domain: &Subspace<F::Elem>, arity: u32) -> Result<u64, AlgebraError> {
    let q = alg
        .field()
        .order()
        .ok_or_else(|| AlgebraError::UnsupportedField("exhaustive and sampled checks need a finite field".into()))?;
    let too_large = AlgebraError::TooLarge { what: "identity check tuples".into(), bound: MAX_IDENTITY_TUPLES };
    let card = q.checked_pow(domain.dim() as u32).ok_or(too_large.clone())?;
    card.checked_pow(arity).filter(|&t| t <= MAX_IDENTITY_TUPLES).ok_or(too_large)?;
    Ok(card)
}

fn random_element<F: Field>(alg: &Algebra<F>, domain: &Subspace<F::Elem>, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let f = alg.field();
    let q = f.order().expect("sampling needs a finite field");
    let mut v = alg.zero();
    for b in domain.basis() {
        let c = f.element_at(rng.gen_range(0..q)).unwrap();
        linalg::axpy(f, &mut v, &c, b);
    }
    v
}

/// `[x, y, ..., y]` with `n` copies of `y`.
pub fn engel_bracket<F: Field>(alg: &Algebra<F>, x: &[F::Elem], y: &[F::Elem], n: usize) -> Vec<F::Elem> {
    let mut v = x.to_vec();
    for _ in 0..n {
        v = alg.bracket(&v, y);
    }
    v
}

/// Matrix of `x -> [x, y]` on `domain`, rows indexed by the domain basis.
fn right_ad_on<F: Field>(alg: &Algebra<F>, domain: &Subspace<F::Elem>, y: &[F::Elem]) -> Matrix<F::Elem> {
    let f = alg.field();
    let rows = domain
        .basis()
        .iter()
        .map(|b| domain.coordinates(f, &alg.bracket(b, y)).expect("domain is closed under brackets"))
        .collect();
    Matrix::from_rows(rows)
}

fn check_bracket_closed<F: Field>(alg: &Algebra<F>, domain: &Subspace<F::Elem>) -> Result<(), AlgebraError> {
    let f = alg.field();
    for a in domain.basis() {
        for b in domain.basis() {
            if !domain.contains(f, &alg.bracket(a, b)) {
                return Err(AlgebraError::BadTable("domain is not closed under brackets".into()));
            }
        }
    }
    Ok(())
}

/// Checks `[x, y, ..., y] = 0` (`n >= 1` copies of `y`) on `domain`.
/// Exhaustive scans run over `y` in the outer loop and report the first `x`
/// failing for the first bad `y`.
pub fn check_engel_identity<F: Field>(
    alg: &Algebra<F>,
    domain: &Subspace<F::Elem>,
    n: usize,
    mode: &CheckMode<F::Elem>,
) -> Result<IdentityVerdict<F::Elem>, AlgebraError> {
    assert!(n >= 1, "Engel identities need at least one repetition");
    let f = alg.field();
    let fails = |x: &[F::Elem], y: &[F::Elem]| !alg.is_zero(&engel_bracket(alg, x, y, n));
    match mode {
        CheckMode::Exhaustive => {
            check_bracket_closed(alg, domain)?;
            let card = domain_card(alg, domain, 2)?;
            let elems = domain_elements(alg, domain);
            for y in &elems {
                let m = matrix_power(f, &right_ad_on(alg, domain, y), n);
                if m.is_zero(f) {
                    continue;
                }
                let x = elems.iter().find(|x| fails(x, y)).expect("nonzero map has a nonzero value");
                return Ok(IdentityVerdict::Counterexample { tuple: vec![x.clone(), y.clone()] });
            }
            Ok(IdentityVerdict::Holds { checked: card * card })
        }
        CheckMode::Sample { seed, count } => {
            domain_card(alg, domain, 0)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*count {
                let x = random_element(alg, domain, &mut rng);
                let y = random_element(alg, domain, &mut rng);
                if fails(&x, &y) {
                    return Ok(IdentityVerdict::Counterexample { tuple: vec![x, y] });
                }
            }
            Ok(IdentityVerdict::Holds { checked: *count })
        }
        CheckMode::Witnesses(tuples) => {
            for t in tuples {
                if fails(&t[0], &t[1]) {
                    return Ok(IdentityVerdict::Counterexample { tuple: t.clone() });
                }
            }
            Ok(IdentityVerdict::Holds { checked: tuples.len() as u64 })
        }
    }
}

/// Least `n` such that the `n`-Engel identity holds on `domain`:
/// `None` when some `ad y` is not nilpotent (no `n` works), `NotWithinCap`
/// when the least `n` exceeds `cap`.
pub fn algebra_engel_length<F: Field>(
    alg: &Algebra<F>,
    domain: &Subspace<F::Elem>,
    cap: usize,
) -> Result<Option<EngelLength>, AlgebraError> {
    check_bracket_closed(alg, domain)?;
    domain_card(alg, domain, 2)?;
    let f = alg.field();
    let d = domain.dim();
    let mut worst = 1;
    for y in domain_elements(alg, domain) {
        let r = right_ad_on(alg, domain, &y);
        let mut m = r.clone();
        let mut k = 1;
        while !m.is_zero(f) {
            // a nilpotent d x d matrix has index at most d
            if k >= d {
                return Ok(None);
            }
            m = linalg::mat_mul(f, &m, &r);
            k += 1;
        }
        worst = worst.max(k);
    }
    Ok(Some(if worst <= cap { EngelLength::Exact(worst) } else { EngelLength::NotWithinCap }))
}

fn matrix_power<F: Field>(f: &F, m: &Matrix<F::Elem>, n: usize) -> Matrix<F::Elem> {
    let mut acc = m.clone();
    for _ in 1..n {
        if acc.is_zero(f) {
            break;
        }
        acc = linalg::mat_mul(f, &acc, m);
    }
    acc
}

/// Checks `([x, y] z)^(p^t) = 0` on `domain`, scanning `(x, y, z)` with `x`
/// most significant.
pub fn check_nonmatrix_pi<F: Field>(
    alg: &Algebra<F>,
    domain: &Subspace<F::Elem>,
    t: u32,
    mode: &CheckMode<F::Elem>,
) -> Result<IdentityVerdict<F::Elem>, AlgebraError> {
    let f = alg.field();
    let e = (f.characteristic() as u64).checked_pow(t).ok_or(AlgebraError::TooLarge {
        what: "identity exponent".into(),
        bound: u64::MAX,
    })?;
    let fails = |c: &[F::Elem], z: &[F::Elem]| !alg.is_zero(&alg.pow(&alg.mul(c, z), e));
    match mode {
        CheckMode::Exhaustive => {
            let card = domain_card(alg, domain, 3)?;
            let elems = domain_elements(alg, domain);
            // first failing z for each distinct bracket value
            let mut cache: HashMap<Vec<F::Elem>, Option<usize>> = HashMap::new();
            for x in &elems {
                for y in &elems {
                    let c = alg.bracket(x, y);
                    let bad = *cache.entry(c.clone()).or_insert_with(|| elems.iter().position(|z| fails(&c, z)));
                    if let Some(z) = bad {
                        return Ok(IdentityVerdict::Counterexample { tuple: vec![x.clone(), y.clone(), elems[z].clone()] });
                    }
                }
            }
            Ok(IdentityVerdict::Holds { checked: card * card * card })
        }
        CheckMode::Sample { seed, count } => {
            domain_card(alg, domain, 0)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*count {
                let tuple: Vec<Vec<F::Elem>> = (0..3).map(|_| random_element(alg, domain, &mut rng)).collect();
                if fails(&alg.bracket(&tuple[0], &tuple[1]), &tuple[2]) {
                    return Ok(IdentityVerdict::Counterexample { tuple });
                }
            }
            Ok(IdentityVerdict::Holds { checked: *count })
        }
        CheckMode::Witnesses(tuples) => {
            for tuple in tuples {
                if fails(&alg.bracket(&tuple[0], &tuple[1]), &tuple[2]) {
                    return Ok(IdentityVerdict::Counterexample { tuple: tuple.clone() });
                }
            }
            Ok(IdentityVerdict::Holds { checked: tuples.len() as u64 })
        }
    }
}

/// Outcome of checking that the nilpotent set `N(A)` is an ideal with
/// `A = Z(A) + N(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnReport<E> {
    pub nilpotent_count: u64,
    pub nilpotent_span: Subspace<E>,
    /// `N(A)` equals its span.
    pub closed_under_addition: bool,
    /// Nilpotents `a, b` with `a + b` not nilpotent.
    pub addition_witness: Option<(Vec<E>, Vec<E>)>,
    pub is_ideal: bool,
    /// `n` in `N(A)` and a basis element `e` with `en` or `ne` outside `N(A)`.
    pub ideal_witness: Option<(Vec<E>, Vec<E>)>,
    pub center_plus_span_is_a: bool,
    /// First basis vector outside `Z(A) + span N(A)`.
    pub uncovered_basis: Option<usize>,
}

impl<E> ZnReport<E> {
    pub fn holds(&self) -> bool {
        self.closed_under_addition && self.is_ideal && self.center_plus_span_is_a
    }
}

/// Exhaustive `Z + N` check, requiring `|A| <= bound`.
pub fn zn_decomposition_check<F: Field>(alg: &Algebra<F>, bound: u64) -> Result<ZnReport<F::Elem>, AlgebraError> {
    let f = alg.field();
    let bitmap = alg.nilpotent_bitmap(bound)?;
    let q = f.order().unwrap();
    let nil: Vec<Vec<F::Elem>> =
        bitmap.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| alg.element_at(i as u64)).collect();
    let mut span = Subspace::zero(alg.dim());
    let mut gens = Vec::new();
    for x in &nil {
        if span.insert(f, x) {
            gens.push(x.clone());
        }
    }
    let is_nil = |x: &[F::Elem]| bitmap[alg.index_of(x) as usize];
    let closed = q.pow(span.dim() as u32) == nil.len() as u64;
    let addition_witness = if closed {
        None
    } else {
        gens.iter()
            .flat_map(|g| nil.iter().map(move |n| (g, n)))
            .find(|(g, n)| !is_nil(&alg.add(g, n)))
            .map(|(g, n)| (g.clone(), n.clone()))
    };
    let mut ideal_witness = None;
    if closed {
        'outer: for b in span.basis() {
            for i in 0..alg.dim() {
                let e = alg.basis_elem(i);
                if !is_nil(&alg.mul(&e, b)) || !is_nil(&alg.mul(b, &e)) {
                    ideal_witness = Some((b.clone(), e));
                    break 'outer;
                }
            }
        }
    }
    let zn = alg.center().sum(f, &span)?;
    let uncovered_basis = (0..alg.dim()).find(|&i| !zn.contains(f, &alg.basis_elem(i)));
    Ok(ZnReport {
        nilpotent_count: nil.len() as u64,
        nilpotent_span: span,
        closed_under_addition: closed,
        addition_witness,
        is_ideal: closed && ideal_witness.is_none(),
        ideal_witness,
        center_plus_span_is_a: uncovered_basis.is_none(),
        uncovered_basis,
    })
}

#[cfg(test)]
mod tests;
