//! Truncated PBW basis and the straightened multiplication of `u(L)`.

use std::sync::Arc;

use serde::Serialize;

use super::{RestrictedError, RestrictedLieAlgebra};
use crate::algebra::{Algebra, AlgebraError};
use crate::fields::Field;
use crate::linalg::{self, DependenceTracker, Subspace};

/// Largest `p^n` accepted by [`RestrictedLieAlgebra::build_u`]. The table
/// has `p^{2n}` entries and validation costs about `p^{3n}` products, so in
/// practice only much smaller algebras are built.
pub const MAX_U_DIM: u64 = 1 << 15;

/// `e_0^{a_0} e_1^{a_1} ... e_{n-1}^{a_{n-1}}` with `0 <= a_i < p`.
///
/// Its index in the basis of `u(L)` is `sum a_i p^i`, so `1` has index 0
/// and `e_i` has index `p^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PbwMonomial {
    pub exponents: Vec<u32>,
}

impl PbwMonomial {
    pub fn from_index(p: u32, n: usize, mut idx: usize) -> Self {
        let mut exponents = Vec::with_capacity(n);
        for _ in 0..n {
            exponents.push((idx % p as usize) as u32);
            idx /= p as usize;
        }
        PbwMonomial { exponents }
    }

    pub fn index(&self, p: u32) -> usize {
        self.exponents.iter().rev().fold(0, |acc, &a| acc * p as usize + a as usize)
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Renders the monomial over basis names, `1` for the empty product.
    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .zip(names)
            .filter(|(a, _)| **a > 0)
            .map(|(a, name)| if *a == 1 { name.clone() } else { format!("{name}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("")
        }
    }
}

/// Minimal relation `sum alpha_i v^{[p]^i} = 0` with `alpha_m = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PPolynomial<E> {
    /// `alpha_0, ..., alpha_m`.
    pub coeffs: Vec<E>,
}

impl<E: Clone> PPolynomial<E> {
    /// `m`, the number of p-map iterations before the dependence.
    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The associative polynomial `sum alpha_i T^{p^i}` in ascending
    /// coefficients (degree `p^m`).
    pub fn associative<F: Field<Elem = E>>(&self, f: &F) -> Vec<E> {
        let p = f.characteristic() as usize;
        let deg = p.pow(self.m() as u32);
        let mut out = vec![f.zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[p.pow(i as u32)] = a.clone();
        }
        out
    }

    /// True iff the relation is `v^{[p]^m} = 0`.
    pub fn is_p_nilpotent<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coeffs[..self.m()].iter().all(|c| f.is_zero(c))
    }
}

/// `L` together with its restricted enveloping algebra.
#[derive(Debug, Clone)]
pub struct Enveloping<F: Field> {
    lie: RestrictedLieAlgebra<F>,
    alg: Arc<Algebra<F>>,
}

struct Straightener<'a, F: Field> {
    lie: &'a RestrictedLieAlgebra<F>,
    p: usize,
    size: usize,
    memo: Vec<Option<Vec<F::Elem>>>,
    busy: Vec<bool>,
}

impl<F: Field> Straightener<'_, F> {
    fn exponent(&self, m: usize, i: usize) -> usize {
        (m / self.p.pow(i as u32)) % self.p
    }

    fn last_factor(&self, m: usize) -> Option<usize> {
        (0..self.lie.dim).rev().find(|&i| self.exponent(m, i) > 0)
    }

    fn unit(&self, m: usize) -> Vec<F::Elem> {
        linalg::unit_vector(&self.lie.field, self.size, m)
    }

    /// Monomial `m` times `e_j`, in the PBW basis.
    fn mul_gen(&mut self, m: usize, j: usize) -> Result<Vec<F::Elem>, RestrictedError> {
        let slot = m * self.lie.dim + j;
        if let Some(v) = &self.memo[slot] {
            return Ok(v.clone());
        }
        if self.busy[slot] {
            return Err(RestrictedError::StraighteningInconsistent(format!(
                "rewriting monomial {m} times e{j} does not terminate"
            )));
        }
        self.busy[slot] = true;
        let pj = self.p.pow(j as u32);
        let result = match self.last_factor(m) {
            None => self.unit(pj),
            Some(k) if k < j => self.unit(m + pj),
            Some(k) if k == j && self.exponent(m, j) + 1 < self.p => self.unit(m + pj),
            Some(k) if k == j => {
                // e_j^p = e_j^[p]
                let rest = m - (self.p - 1) * pj;
                let image = self.lie.pmap[j].clone();
                self.mul_vec_combination(rest, &image)?
            }
            Some(k) => {
                // m = m' e_k with k > j: m' e_k e_j = (m' e_j) e_k + m' [e_k, e_j]
                let rest = m - self.p.pow(k as u32);
                let left = self.mul_gen(rest, j)?;
                let mut out = self.mul_vec(&left, k)?;
                let br = self.lie.bracket[k][j].clone();
                let extra = self.mul_vec_combination(rest, &br)?;
                out = linalg::vec_add(&self.lie.field, &out, &extra);
                out
            }
        };
        self.busy[slot] = false;
        self.memo[slot] = Some(result.clone());
        Ok(result)
    }

    /// Monomial `m` times the element `sum c_l e_l` of `L`.
    fn mul_vec_combination(&mut self, m: usize, coeffs: &[F::Elem]) -> Result<Vec<F::Elem>, RestrictedError> {
        let mut out = vec![self.lie.field.zero(); self.size];
        for (l, c) in coeffs.iter().enumerate() {
            if !self.lie.field.is_zero(c) {
                let prod = self.mul_gen(m, l)?;
                linalg::axpy(&self.lie.field, &mut out, c, &prod);
            }
        }
        Ok(out)
    }

    /// `v e_k` for `v` in `u(L)`.
    fn mul_vec(&mut self, v: &[F::Elem], k: usize) -> Result<Vec<F::Elem>, RestrictedError> {
        let mut out = vec![self.lie.field.zero(); self.size];
        for (m, c) in v.iter().enumerate() {
            if !self.lie.field.is_zero(c) {
                let prod = self.mul_gen(m, k)?;
                linalg::axpy(&self.lie.field, &mut out, c, &prod);
            }
        }
        Ok(out)
    }
}

impl<F: Field> RestrictedLieAlgebra<F> {
    /// Builds `u(L)` on the truncated PBW basis and validates associativity
    /// of the resulting table on all basis triples.
    pub fn build_u(&self) -> Result<Enveloping<F>, RestrictedError> {
        let p = self.characteristic() as u64;
        let size = p.checked_pow(self.dim as u32).filter(|&s| s <= MAX_U_DIM).ok_or_else(|| {
            AlgebraError::TooLarge { what: format!("dim u(L) = {p}^{}", self.dim), bound: MAX_U_DIM }
        })? as usize;
        let mut st = Straightener {
            lie: self,
            p: p as usize,
            size,
            memo: vec![None; size * self.dim],
            busy: vec![false; size * self.dim],
        };
        let f = &self.field;
        let mut dense: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(size);
        for m1 in 0..size {
            let mut row: Vec<Vec<F::Elem>> = Vec::with_capacity(size);
            row.push(st.unit(m1));
            for m2 in 1..size {
                let k = st.last_factor(m2).expect("m2 > 0");
                let prev = row[m2 - st.p.pow(k as u32)].clone();
                row.push(st.mul_vec(&prev, k)?);
            }
            dense.push(row);
        }
        let table = dense
            .into_iter()
            .flatten()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect())
            .collect();
        let one = linalg::unit_vector(f, size, 0);
        let alg = Algebra::from_sparse(f.clone(), size, table, one).map_err(|e| match e {
            AlgebraError::NotAssociative { i, j, k } => RestrictedError::StraighteningInconsistent(format!(
                "(b{i} b{j}) b{k} != b{i} (b{j} b{k}) in the PBW basis"
            )),
            other => other.into(),
        })?;
        Ok(Enveloping { lie: self.clone(), alg: Arc::new(alg) })
    }
}

impl<F: Field> Enveloping<F> {
    pub fn lie(&self) -> &RestrictedLieAlgebra<F> {
        &self.lie
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        &self.lie.field
    }

    fn p(&self) -> usize {
        self.lie.characteristic() as usize
    }

    pub fn monomial(&self, idx: usize) -> PbwMonomial {
        PbwMonomial::from_index(self.lie.characteristic(), self.lie.dim, idx)
    }

    /// Display names of the basis of `L`: `x, y, z, w` up to dimension 4,
    /// `e0, e1, ...` beyond.
    pub fn basis_names(&self) -> Vec<String> {
        let n = self.lie.dim;
        if n <= 4 {
            ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (0..n).map(|i| format!("e{i}")).collect()
        }
    }

    /// An element of `u(L)` as a combination of PBW monomials.
    pub fn fmt_elem(&self, a: &[F::Elem]) -> String {
        let f = self.field();
        let names = self.basis_names();
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(m, c)| {
                let mono = self.monomial(m).display(&names);
                match (f.is_one(c), mono.as_str()) {
                    (true, _) => mono,
                    (false, "1") => f.fmt_elem(c),
                    (false, _) => format!("({})*{mono}", f.fmt_elem(c)),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Basis index of `e_i` inside `u(L)`.
    pub fn generator_index(&self, i: usize) -> usize {
        self.p().pow(i as u32)
    }

    pub fn embed(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = self.alg.zero();
        for (i, c) in v.iter().enumerate() {
            out[self.generator_index(i)] = c.clone();
        }
        out
    }

    /// Inverse of [`Enveloping::embed`] on the image of `L`.
    pub fn project(&self, a: &[F::Elem]) -> Result<Vec<F::Elem>, RestrictedError> {
        let f = self.field();
        let gens: Vec<usize> = (0..self.lie.dim).map(|i| self.generator_index(i)).collect();
        if a.iter().enumerate().any(|(m, c)| !gens.contains(&m) && !f.is_zero(c)) {
            return Err(RestrictedError::NotInL);
        }
        Ok(gens.iter().map(|&m| a[m].clone()).collect())
    }

    /// Embedded image of a subspace of `L`.
    pub fn embed_space(&self, s: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        self.alg.span(s.basis().iter().map(|v| self.embed(v)).collect())
    }

    /// `v^[p]`, read off as the associative p-th power in `u(L)`.
    pub fn p_power(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, RestrictedError> {
        let power = self.alg.pow(&self.embed(v), self.p() as u64);
        self.project(&power).map_err(|_| {
            RestrictedError::InternalInconsistency("the p-th power of an element of L left the image of L".into())
        })
    }

    /// `v^{[p]^k}`.
    pub fn p_power_iter(&self, v: &[F::Elem], k: usize) -> Result<Vec<F::Elem>, RestrictedError> {
        let mut x = v.to_vec();
        for _ in 0..k {
            x = self.p_power(&x)?;
        }
        Ok(x)
    }

    /// First linear dependence among `v, v^[p], v^{[p]^2}, ...`.
    pub fn p_polynomial(&self, v: &[F::Elem]) -> Result<PPolynomial<F::Elem>, RestrictedError> {
        let f = self.field();
        let mut tracker = DependenceTracker::new();
        let mut x = v.to_vec();
        loop {
            if let Some(coeffs) = tracker.push(f, &x) {
                return Ok(PPolynomial { coeffs });
            }
            x = self.p_power(&x)?;
        }
    }

    pub fn is_p_nilpotent(&self, v: &[F::Elem]) -> Result<bool, RestrictedError> {
        Ok(self.p_polynomial(v)?.is_p_nilpotent(self.field()))
    }
}
