//! p-nilpotent elements, restricted subalgebras and quotients.

use super::pbw::Enveloping;
use super::{RestrictedError, RestrictedLieAlgebra};
use crate::algebra::{AlgebraError, Odometer};
use crate::fields::Field;
use crate::linalg::{self, Matrix, Subspace};

/// Bound on `|L|` for the exhaustive p-nilpotency scan.
pub const MAX_P_SCAN: u64 = 1 << 16;
/// Bound on `p^dim` for the Frobenius-kernel computation over `F_p(t)`.
const MAX_FROBENIUS_POWER: u64 = 1 << 10;

/// Why a set of p-nilpotent elements is not a restricted-closed subspace.
#[derive(Debug, Clone, PartialEq)]
pub enum NonClosure<E> {
    /// `a` and `b` are p-nilpotent, `a + b` is not.
    Sum(Vec<E>, Vec<E>),
    /// The set is a subspace but `[a, b]` leaves it.
    Bracket(Vec<E>, Vec<E>),
}

/// The set `P(L)` of p-nilpotent elements.
#[derive(Debug, Clone, PartialEq)]
pub enum PSet<E> {
    /// `P(L)` is a subspace closed under brackets. `exact` is false when it
    /// came from a search over `F_p`-combinations of the basis, which only
    /// spans the p-nilpotent elements found.
    Subspace { space: Subspace<E>, exact: bool },
    Set { elements: Vec<Vec<E>>, witness: NonClosure<E> },
}

impl<E: Clone + PartialEq> PSet<E> {
    pub fn subspace(&self) -> Option<&Subspace<E>> {
        match self {
            PSet::Subspace { space, .. } => Some(space),
            PSet::Set { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, PSet::Subspace { exact: false, .. })
    }
}

/// All elements of `s` over a finite field, in scan order of the
/// coordinates with respect to the stored basis.
pub fn subspace_elements<F: Field>(f: &F, s: &Subspace<F::Elem>, bound: u64) -> Result<Vec<Vec<F::Elem>>, AlgebraError> {
    let q = f.order().ok_or_else(|| AlgebraError::UnsupportedField("enumeration needs a finite field".into()))?;
    let count = q
        .checked_pow(s.dim() as u32)
        .filter(|&c| c <= bound)
        .ok_or_else(|| AlgebraError::TooLarge { what: format!("{q}^{} subspace elements", s.dim()), bound })?;
    let mut out = Vec::with_capacity(count as usize);
    let mut odo = Odometer::new(f, s.dim());
    let mut x = vec![f.zero(); s.ambient_dim()];
    loop {
        out.push(x.clone());
        match odo.advance() {
            None => return Ok(out),
            Some(changes) => {
                for (pos, delta) in changes {
                    linalg::axpy(f, &mut x, delta, &s.basis()[*pos]);
                }
            }
        }
    }
}

impl<F: Field> RestrictedLieAlgebra<F> {
    /// `<gens>_p`: the smallest subspace containing `gens` and closed under
    /// the bracket and the p-map.
    ///
    /// A Lie subalgebra containing the p-th powers of one of its bases is
    /// closed under the p-map, so it is enough to alternate bracket closure
    /// with adding p-powers of basis vectors.
    pub fn restricted_subalgebra(
        &self,
        u: &Enveloping<F>,
        gens: &[Vec<F::Elem>],
    ) -> Result<Subspace<F::Elem>, RestrictedError> {
        let f = &self.field;
        let mut space = self.span(gens.to_vec());
        loop {
            space = self.lie_closure(&space);
            let mut grew = false;
            for b in space.basis().to_vec() {
                grew |= space.insert(f, &u.p_power(&b)?);
            }
            if !grew {
                return Ok(space);
            }
        }
    }

    fn lie_closure(&self, s: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        let mut space = s.clone();
        loop {
            let br = self.bracket_space(&space, &space);
            let next = space.sum(&self.field, &br).expect("same ambient space");
            if next.dim() == space.dim() {
                return space;
            }
            space = next;
        }
    }

    /// `[L, I] <= I` and `b^[p]` in `I` for a basis `b` of `I`.
    pub fn is_restricted_ideal(&self, u: &Enveloping<F>, ideal: &Subspace<F::Elem>) -> Result<bool, RestrictedError> {
        let f = &self.field;
        if !self.bracket_space(&self.full_space(), ideal).is_subspace_of(f, ideal) {
            return Ok(false);
        }
        for b in ideal.basis() {
            if !ideal.contains(f, &u.p_power(b)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `L / I` on the basis of standard vectors complementary to the pivots
    /// of `I`.
    pub fn quotient(&self, u: &Enveloping<F>, ideal: &Subspace<F::Elem>) -> Result<Self, RestrictedError> {
        if !self.is_restricted_ideal(u, ideal)? {
            return Err(RestrictedError::NotRestrictedIdeal);
        }
        let f = &self.field;
        let keep = ideal.complement_indices();
        let coords = |v: &[F::Elem]| -> Vec<F::Elem> {
            let r = ideal.reduce(f, v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let bracket = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| coords(&self.bracket[a][b])).collect())
            .collect();
        let pmap = keep.iter().map(|&a| coords(&self.pmap[a])).collect();
        Self::new(f.clone(), bracket, pmap)
    }
}

impl<F: Field> Enveloping<F> {
    /// The set of p-nilpotent elements of `L`.
    ///
    /// Over a finite field every element is tested. Over `F_p(t)` with `L`
    /// abelian the p-map is p-semilinear and `P(L)` is the kernel of
    /// `v -> v^{[p]^n}`, computed exactly by splitting into Frobenius
    /// components. Otherwise `F_p`-combinations of the basis are searched
    /// and the result is flagged inexact.
    pub fn compute_p(&self) -> Result<PSet<F::Elem>, RestrictedError> {
        let lie = self.lie();
        let f = lie.field();
        if f.order().is_some() {
            let full = lie.full_space();
            let all = subspace_elements(f, &full, MAX_P_SCAN)?;
            let mut found = Vec::new();
            for v in all {
                if self.is_p_nilpotent(&v)? {
                    found.push(v);
                }
            }
            return self.classify(found);
        }
        if lie.is_abelian() {
            if let Some(space) = self.frobenius_kernel()? {
                return Ok(PSet::Subspace { space, exact: true });
            }
        }
        let p = lie.characteristic() as u64;
        let count = p
            .checked_pow(lie.dim() as u32)
            .filter(|&c| c <= MAX_P_SCAN)
            .ok_or_else(|| AlgebraError::TooLarge { what: "F_p-combinations of the basis".into(), bound: MAX_P_SCAN })?;
        let mut space = Subspace::zero(lie.dim());
        for idx in 1..count {
            let mut rest = idx;
            let v: Vec<F::Elem> = (0..lie.dim())
                .map(|_| {
                    let d = rest % p;
                    rest /= p;
                    f.from_int(d as i64)
                })
                .collect();
            if self.is_p_nilpotent(&v)? {
                space.insert(f, &v);
            }
        }
        Ok(PSet::Subspace { space, exact: false })
    }

    fn classify(&self, found: Vec<Vec<F::Elem>>) -> Result<PSet<F::Elem>, RestrictedError> {
        let lie = self.lie();
        let f = lie.field();
        let q = f.order().expect("finite field");
        let space = lie.span(found.clone());
        if q.pow(space.dim() as u32) != found.len() as u64 {
            for a in &found {
                for b in &found {
                    if !self.is_p_nilpotent(&linalg::vec_add(f, a, b))? {
                        let witness = NonClosure::Sum(a.clone(), b.clone());
                        return Ok(PSet::Set { elements: found, witness });
                    }
                }
            }
            return Err(RestrictedError::InternalInconsistency(
                "p-nilpotent set is closed under sums but is not a subspace".into(),
            ));
        }
        for a in space.basis() {
            for b in space.basis() {
                if !space.contains(f, &lie.bracket(a, b)) {
                    let witness = NonClosure::Bracket(a.clone(), b.clone());
                    return Ok(PSet::Set { elements: found, witness });
                }
            }
        }
        Ok(PSet::Subspace { space, exact: true })
    }

    /// `ker(v -> v^{[p]^n})` for abelian `L` over a field with Frobenius
    /// components, or `None` when the field does not provide them.
    fn frobenius_kernel(&self) -> Result<Option<Subspace<F::Elem>>, RestrictedError> {
        let lie = self.lie();
        let f = lie.field();
        let n = lie.dim();
        let p = lie.characteristic() as u64;
        let Some(q) = p.checked_pow(n as u32).filter(|&q| q <= MAX_FROBENIUS_POWER) else {
            return Ok(None);
        };
        // v^[p] = M Frob(v), hence v^{[p]^n} = M M^(p) ... M^(p^{n-1}) Frob^n(v)
        let m = Matrix::from_columns(n, lie.pmap_table());
        let mut twisted = m.clone();
        let mut acc = Matrix::identity(f, n);
        for _ in 0..n {
            acc = linalg::mat_mul(f, &acc, &twisted);
            let rows = twisted.to_rows().iter().map(|r| r.iter().map(|c| f.frobenius(c)).collect()).collect();
            twisted = Matrix::from_rows(rows);
        }
        // sum_j N[r][j] v_j^q = sum_s t^s (sum_j g_{r,j,s} v_j)^q vanishes iff
        // every inner sum does, since 1, t, ..., t^{q-1} are independent over
        // the q-th powers.
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for r in 0..n {
            let mut comps = Vec::with_capacity(n);
            for j in 0..n {
                match f.frobenius_components(acc.get(r, j), q) {
                    Some(c) => comps.push(c),
                    None => return Ok(None),
                }
            }
            for s in 0..q as usize {
                rows.push((0..n).map(|j| comps[j][s].clone()).collect());
            }
        }
        Ok(Some(linalg::kernel(f, &Matrix::from_rows(rows))))
    }

    /// `P(L) u(L)` inside `u(L)`.
    pub fn pl_ideal(&self, pset: &PSet<F::Elem>) -> Result<Subspace<F::Elem>, RestrictedError> {
        let space = pset.subspace().ok_or(RestrictedError::PNotSubspace)?;
        let alg = self.algebra();
        Ok(alg.product(&self.embed_space(space), &alg.full_space()))
    }
}
