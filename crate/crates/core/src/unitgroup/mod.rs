//! Unit groups of finite algebras and their subgroups.
//!
//! Groups are stored as explicit element lists sorted by algebra index, with
//! a generating set carried along so that commutator subgroups and normal
//! closures can be formed from generators instead of all element pairs.

mod word;

use std::collections::HashSet;
use std::sync::Arc;

use std::sync::OnceLock;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraError, Odometer, MAX_UNIT_SCAN};
use crate::fields::Field;
use crate::linalg::{self, Subspace};

pub use word::{GroupWord, WordError};

/// Largest group for which a full Cayley table is cached.
pub const CAYLEY_MAX: usize = 2048;
/// Bound on `|G|^arity` for exhaustive word checks.
pub const MAX_WORD_TUPLES: u64 = 1_000_000_000;
/// Bound on `|G|^2` for computing the exact Engel length of a group.
pub const ENGEL_PAIR_BUDGET: u64 = 1 << 22;
pub const DEFAULT_ENGEL_CAP: usize = 10;

/// A finite subgroup of `A^x`.
#[derive(Debug, Clone)]
pub struct UnitGroup<F: Field> {
    alg: Arc<Algebra<F>>,
    keys: Vec<u64>,
    elems: Vec<Vec<F::Elem>>,
    gens: Vec<Vec<F::Elem>>,
    cayley: OnceLock<Option<Cayley>>,
}

#[derive(Debug, Clone)]
struct Cayley {
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

#[derive(Debug, Clone, Copy)]
pub enum WordCheckMode {
    Exhaustive,
    Sample { seed: u64, count: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict<E> {
    Holds { checked: u64 },
    /// First failing tuple in scan order (exhaustive) or sampling order.
    Counterexample { tuple: Vec<Vec<E>> },
}

impl<E> IdentityVerdict<E> {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum EngelLength {
    Exact(usize),
    NotWithinCap,
    /// The pair scan exceeded its budget.
    Unevaluated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupEngelReport {
    /// For finite groups, Engel and nilpotent coincide.
    pub engel: bool,
    pub nilpotency_class: Option<usize>,
    pub min_length: Option<EngelLength>,
}

impl<F: Field> UnitGroup<F> {
    /// All units of `A`, requiring `|A| <= bound`.
    pub fn enumerate(alg: Arc<Algebra<F>>, bound: u64) -> Result<Self, AlgebraError> {
        let bound = bound.min(MAX_UNIT_SCAN);
        let bitmap = alg.unit_bitmap(bound)?;
        let keys: Vec<u64> = bitmap.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i as u64).collect();
        let elems = keys.iter().map(|&k| alg.element_at(k)).collect();
        let mut g = UnitGroup { alg, keys, elems, gens: Vec::new(), cayley: OnceLock::new() };
        g.gens = g.greedy_generators();
        Ok(g)
    }

    /// `GL_n(F)` as the units of `M_n(F)`.
    pub fn gl(field: F, n: usize) -> Result<Self, AlgebraError> {
        Self::enumerate(Arc::new(Algebra::matrix(field, n)), MAX_UNIT_SCAN)
    }

    /// The adjoint group `1 + N` of a nil ideal `N`.
    pub fn adjoint(alg: Arc<Algebra<F>>, n: &Subspace<F::Elem>, bound: u64) -> Result<Self, AlgebraError> {
        let f = alg.field().clone();
        let q = f.order().ok_or_else(|| AlgebraError::UnsupportedField("adjoint groups need a finite field".into()))?;
        let size = q.checked_pow(n.dim() as u32).filter(|&s| s <= bound).ok_or(AlgebraError::TooLarge {
            what: "adjoint group order".into(),
            bound,
        })?;
        if n.basis().iter().any(|b| !alg.is_nilpotent_elem(b)) {
            return Err(AlgebraError::NotNil);
        }
        let mut elems = Vec::with_capacity(size as usize);
        let mut odo = Odometer::new(&f, n.dim());
        let mut current = alg.zero();
        loop {
            if !alg.is_nilpotent_elem(&current) {
                return Err(AlgebraError::NotNil);
            }
            elems.push(alg.add(alg.one(), &current));
            match odo.advance() {
                None => break,
                Some(changes) => {
                    for (pos, delta) in changes {
                        linalg::axpy(&f, &mut current, delta, &n.basis()[*pos]);
                    }
                }
            }
        }
        let mut g = Self::from_elements(alg, elems);
        g.gens = g.greedy_generators();
        Ok(g)
    }

    fn from_elements(alg: Arc<Algebra<F>>, elems: Vec<Vec<F::Elem>>) -> Self {
        let mut pairs: Vec<(u64, Vec<F::Elem>)> = elems.into_iter().map(|e| (alg.index_of(&e), e)).collect();
        pairs.sort_by_key(|(k, _)| *k);
        pairs.dedup_by_key(|(k, _)| *k);
        let (keys, elems) = pairs.into_iter().unzip();
        UnitGroup { alg, keys, elems, gens: Vec::new(), cayley: OnceLock::new() }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.keys.len() == 1
    }

    /// Elements in scan order.
    pub fn elements(&self) -> &[Vec<F::Elem>] {
        &self.elems
    }

    pub fn generators(&self) -> &[Vec<F::Elem>] {
        &self.gens
    }

    pub fn position(&self, x: &[F::Elem]) -> Option<usize> {
        self.keys.binary_search(&self.alg.index_of(x)).ok()
    }

    pub fn contains(&self, x: &[F::Elem]) -> bool {
        self.position(x).is_some()
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.alg.mul(x, y)
    }

    pub fn inv(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.alg.invert(x).expect("group elements are units")
    }

    /// `(x, y) = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        // (x,y) = (yx)^-1 xy
        self.mul(&self.inv(&yx), &xy)
    }

    /// Subgroup generated by `gens` (which must lie in this group).
    pub fn subgroup(&self, gens: &[Vec<F::Elem>]) -> UnitGroup<F> {
        let mut c = Closure::new(self.alg.clone());
        for g in gens {
            c.add_generator(g);
        }
        c.finish()
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Vec<F::Elem>]) -> UnitGroup<F> {
        let mut c = Closure::new(self.alg.clone());
        for g in gens {
            c.add_generator(g);
        }
        let conj: Vec<(Vec<F::Elem>, Vec<F::Elem>)> = self.gens.iter().map(|g| (self.inv(g), g.clone())).collect();
        let mut i = 0;
        while i < c.gens.len() {
            let n = c.gens[i].clone();
            for (ginv, g) in &conj {
                let x = self.mul(&self.mul(ginv, &n), g);
                c.add_generator(&x);
            }
            i += 1;
        }
        c.finish()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.mul(&g[i], &g[j]) == self.mul(&g[j], &g[i])))
    }

    pub fn element_order(&self, x: &[F::Elem]) -> usize {
        let one = self.alg.one();
        let mut y = x.to_vec();
        let mut k = 1;
        while y != one {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elems.iter().fold(1, |acc, x| {
            let o = self.element_order(x);
            acc / gcd(acc, o) * o
        })
    }

    /// `[H, K]` for subgroups `H, K` with `K` normalizing `H` (in
    /// particular `H = K`, or `K = G` with `H` normal).
    pub fn commutator_subgroup(&self, h: &UnitGroup<F>, k: &UnitGroup<F>) -> UnitGroup<F> {
        let mut gens = Vec::new();
        for a in h.generators() {
            for b in k.generators() {
                gens.push(self.commutator(a, b));
            }
        }
        k.normal_closure(&gens)
    }

    /// `G = G^(0) > G^(1) > ...` up to the trivial group or the first term
    /// that equals its own commutator subgroup.
    pub fn derived_series(&self) -> Vec<UnitGroup<F>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return series;
            }
            let next = last.commutator_subgroup(last, last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Solvability and derived length (number of strict steps to `{1}`).
    pub fn is_solvable(&self) -> (bool, Option<usize>) {
        let s = self.derived_series();
        if s.last().unwrap().is_trivial() {
            (true, Some(s.len() - 1))
        } else {
            (false, None)
        }
    }

    /// `gamma_1 = G`, `gamma_{k+1} = [gamma_k, G]`, stopping at the trivial
    /// group or when the series stalls.
    pub fn lower_central_series(&self) -> Vec<UnitGroup<F>> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return series;
            }
            let next = self.commutator_subgroup(last, self);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency and class (least `c` with `gamma_{c+1} = 1`).
    pub fn is_nilpotent(&self) -> (bool, Option<usize>) {
        let s = self.lower_central_series();
        if s.last().unwrap().is_trivial() {
            (true, Some(s.len() - 1))
        } else {
            (false, None)
        }
    }

    fn cayley(&self) -> Option<&Cayley> {
        self.cayley
            .get_or_init(|| {
                let n = self.order();
                if n > CAYLEY_MAX {
                    return None;
                }
                let mut table = vec![0u32; n * n];
                for (i, x) in self.elems.iter().enumerate() {
                    for (j, y) in self.elems.iter().enumerate() {
                        let pos = self.position(&self.mul(x, y)).expect("group is closed");
                        table[i * n + j] = pos as u32;
                    }
                }
                let identity = self.position(self.alg.one()).expect("group contains 1") as u32;
                let mut inv = vec![0u32; n];
                for i in 0..n {
                    let j = (0..n).find(|&j| table[i * n + j] == identity).expect("inverse exists");
                    inv[i] = j as u32;
                }
                Some(Cayley { table, inv, identity })
            })
            .as_ref()
    }

    /// Evaluates `w` on element positions.
    fn eval_positions(&self, w: &GroupWord, args: &[usize]) -> usize {
        if let Some(c) = self.cayley() {
            let n = self.order();
            let mut acc = c.identity as usize;
            for &(v, e) in w.letters() {
                let g = if e > 0 { args[v] } else { c.inv[args[v]] as usize };
                acc = c.table[acc * n + g] as usize;
            }
            acc
        } else {
            let vals: Vec<Vec<F::Elem>> = args.iter().map(|&a| self.elems[a].clone()).collect();
            self.position(&self.eval_word(w, &vals)).expect("group is closed")
        }
    }

    pub fn eval_word(&self, w: &GroupWord, args: &[Vec<F::Elem>]) -> Vec<F::Elem> {
        let invs: Vec<Option<Vec<F::Elem>>> = (0..args.len())
            .map(|i| w.letters().iter().any(|&(v, e)| v == i && e < 0).then(|| self.inv(&args[i])))
            .collect();
        let mut acc = self.alg.one().to_vec();
        for &(v, e) in w.letters() {
            let g = if e > 0 { &args[v] } else { invs[v].as_ref().unwrap() };
            acc = self.mul(&acc, g);
        }
        acc
    }

    /// Checks `w = 1` on all tuples (scan order, first variable most
    /// significant) or on seeded random tuples.
    pub fn check_word_identity(&self, w: &GroupWord, mode: WordCheckMode) -> Result<IdentityVerdict<F::Elem>, AlgebraError> {
        let n = self.order();
        let k = w.arity();
        let identity = self.position(self.alg.one()).unwrap();
        let fail = |args: &[usize]| IdentityVerdict::Counterexample { tuple: args.iter().map(|&a| self.elems[a].clone()).collect() };
        match mode {
            WordCheckMode::Exhaustive => {
                let total = (n as u64)
                    .checked_pow(k as u32)
                    .filter(|&t| t <= MAX_WORD_TUPLES)
                    .ok_or(AlgebraError::TooLarge { what: "word check tuples".into(), bound: MAX_WORD_TUPLES })?;
                let mut args = vec![0usize; k];
                for _ in 0..total {
                    if self.eval_positions(w, &args) != identity {
                        return Ok(fail(&args));
                    }
                    for slot in args.iter_mut().rev() {
                        *slot += 1;
                        if *slot < n {
                            break;
                        }
                        *slot = 0;
                    }
                }
                Ok(IdentityVerdict::Holds { checked: total })
            }
            WordCheckMode::Sample { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let args: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
                    if self.eval_positions(w, &args) != identity {
                        return Ok(fail(&args));
                    }
                }
                Ok(IdentityVerdict::Holds { checked: count })
            }
        }
    }

    /// Engel verdict via nilpotency and, when nilpotent and the pair scan fits
    /// the budget, the least `n <= cap` with `(x, y, ..., y) = 1` (n copies
    /// of `y`) for all pairs.
    pub fn engel_report(&self, cap: usize) -> GroupEngelReport {
        let (nilpotent, class) = self.is_nilpotent();
        if !nilpotent {
            return GroupEngelReport { engel: false, nilpotency_class: None, min_length: None };
        }
        let n = self.order() as u64;
        let min_length = if n * n > ENGEL_PAIR_BUDGET || self.cayley().is_none() {
            EngelLength::Unevaluated
        } else {
            self.min_engel_length(cap)
        };
        GroupEngelReport { engel: true, nilpotency_class: class, min_length: Some(min_length) }
    }

    fn min_engel_length(&self, cap: usize) -> EngelLength {
        let c = self.cayley().expect("checked by caller");
        let n = self.order();
        let comm = |x: usize, y: usize| -> usize {
            let xy = c.table[x * n + y] as usize;
            let yx = c.table[y * n + x] as usize;
            c.table[c.inv[yx] as usize * n + xy] as usize
        };
        let id = c.identity as usize;
        let mut worst = 1;
        for x in 0..n {
            for y in 0..n {
                let mut v = comm(x, y);
                let mut k = 1;
                while v != id {
                    if k >= cap {
                        return EngelLength::NotWithinCap;
                    }
                    v = comm(v, y);
                    k += 1;
                }
                worst = worst.max(k);
            }
        }
        EngelLength::Exact(worst)
    }

    /// Greedy generating set: scan elements in order, keeping those not yet
    /// generated.
    fn greedy_generators(&self) -> Vec<Vec<F::Elem>> {
        let mut c = Closure::new(self.alg.clone());
        for x in &self.elems {
            if c.elems.len() == self.order() {
                break;
            }
            if !c.contains(x) {
                c.add_generator(x);
            }
        }
        c.gens
    }
}

/// Incremental subgroup closure under right multiplication by generators.
struct Closure<F: Field> {
    alg: Arc<Algebra<F>>,
    seen: HashSet<u64>,
    elems: Vec<Vec<F::Elem>>,
    gens: Vec<Vec<F::Elem>>,
}

impl<F: Field> Closure<F> {
    fn new(alg: Arc<Algebra<F>>) -> Self {
        let one = alg.one().to_vec();
        let mut seen = HashSet::new();
        seen.insert(alg.index_of(&one));
        Closure { alg, seen, elems: vec![one], gens: Vec::new() }
    }

    fn contains(&self, x: &[F::Elem]) -> bool {
        self.seen.contains(&self.alg.index_of(x))
    }

    fn push(&mut self, x: Vec<F::Elem>) -> bool {
        if self.seen.insert(self.alg.index_of(&x)) {
            self.elems.push(x);
            true
        } else {
            false
        }
    }

    /// Adds `g` and closes; returns whether the group grew.
    fn add_generator(&mut self, g: &[F::Elem]) -> bool {
        if self.contains(g) {
            return false;
        }
        self.gens.push(g.to_vec());
        // every old element times g, then BFS with all generators
        let old = self.elems.len();
        let mut frontier = Vec::new();
        for i in 0..old {
            let y = self.alg.mul(&self.elems[i], g);
            if self.push(y) {
                frontier.push(self.elems.len() - 1);
            }
        }
        while let Some(i) = frontier.pop() {
            for j in 0..self.gens.len() {
                let y = self.alg.mul(&self.elems[i], &self.gens[j]);
                if self.push(y) {
                    frontier.push(self.elems.len() - 1);
                }
            }
        }
        true
    }

    fn finish(self) -> UnitGroup<F> {
        let gens = self.gens;
        let mut g = UnitGroup::from_elements(self.alg, self.elems);
        g.gens = gens;
        g
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests;
