//! Subspace-level structure of an algebra: ideals, center, quotients,
//! generated subalgebras, minimal polynomials and Jordan–Chevalley parts.

use super::{Algebra, AlgebraError};
use crate::fields::{poly, Field};
use crate::linalg::{self, DependenceTracker, Matrix, Subspace};

/// `x = semisimple + nilpotent` with commuting parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanChevalley<E> {
    pub semisimple: Vec<E>,
    pub nilpotent: Vec<E>,
    /// `semisimple = s(x)` for this polynomial `s`.
    pub polynomial: Vec<E>,
}

/// Span of the nilpotent elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentSpan<E> {
    pub span: Subspace<E>,
    /// False when the span comes from a partial search and is only a lower
    /// bound.
    pub exact: bool,
}

impl<F: Field> Algebra<F> {
    pub fn span(&self, vectors: Vec<Vec<F::Elem>>) -> Subspace<F::Elem> {
        Subspace::span(&self.field, self.dim, vectors)
    }

    pub fn full_space(&self) -> Subspace<F::Elem> {
        Subspace::full(&self.field, self.dim)
    }

    /// Evaluates `sum c_i x^i`.
    pub fn eval_poly(&self, coeffs: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            linalg::axpy(&self.field, &mut acc, c, &self.one);
        }
        acc
    }

    /// Monic polynomial of least degree annihilating `x`, ascending
    /// coefficients.
    pub fn minimal_polynomial(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut tracker = DependenceTracker::new();
        let mut power = self.one.clone();
        loop {
            if let Some(rel) = tracker.push(&self.field, &power) {
                return rel;
            }
            power = self.mul(&power, x);
        }
    }

    pub fn is_nilpotent_elem(&self, x: &[F::Elem]) -> bool {
        let m = self.minimal_polynomial(x);
        m[..m.len() - 1].iter().all(|c| self.field.is_zero(c))
    }

    /// Separable minimal polynomial.
    pub fn is_semisimple_elem(&self, x: &[F::Elem]) -> bool {
        poly::is_separable(&self.field, &self.minimal_polynomial(x))
    }

    /// `x = x_s + x_n` with `x_s` semisimple, `x_n` nilpotent, both
    /// polynomials in `x`. Newton iteration on the separable radical `g` of
    /// the minimal polynomial `f`, carried out in `F[T]/(f)`.
    pub fn jordan_chevalley(&self, x: &[F::Elem]) -> Result<JordanChevalley<F::Elem>, AlgebraError> {
        let f = &self.field;
        if !f.is_perfect() {
            return Err(AlgebraError::ImperfectField);
        }
        let m = self.minimal_polynomial(x);
        let g = poly::separable_radical(f, &m).ok_or(AlgebraError::ImperfectField)?;
        let dg = poly::derivative(f, &g);
        let compose = |p: &[F::Elem], y: &[F::Elem]| -> Vec<F::Elem> {
            let mut acc: Vec<F::Elem> = Vec::new();
            for c in p.iter().rev() {
                acc = poly::add(f, &poly::mul(f, &acc, y), &[c.clone()]);
                acc = poly::divrem(f, &acc, &m).1;
            }
            acc
        };
        let mut y = poly::divrem(f, &[f.zero(), f.one()], &m).1;
        loop {
            let gy = compose(&g, &y);
            if gy.is_empty() {
                break;
            }
            let inv = poly::inv_mod(f, &compose(&dg, &y), &m).expect("g' is invertible modulo the minimal polynomial");
            let step = poly::divrem(f, &poly::mul(f, &gy, &inv), &m).1;
            y = poly::sub(f, &y, &step);
        }
        let semisimple = self.eval_poly(&y, x);
        let nilpotent = self.sub(x, &semisimple);
        Ok(JordanChevalley { semisimple, nilpotent, polynomial: y })
    }

    /// Joint kernel of `ad(e_i)`.
    pub fn center(&self) -> Subspace<F::Elem> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let ad = self.ad_matrix(&self.basis_elem(i));
            rows.extend(ad.to_rows());
        }
        linalg::kernel(&self.field, &Matrix::from_rows(rows))
    }

    /// `span{ab : a in U, b in V}`.
    pub fn product(&self, u: &Subspace<F::Elem>, v: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        let mut out = Subspace::zero(self.dim);
        for a in u.basis() {
            for b in v.basis() {
                out.insert(&self.field, &self.mul(a, b));
                if out.is_full() {
                    return out;
                }
            }
        }
        out
    }

    /// `span{[a, b] : a in U, b in V}`.
    pub fn bracket_space(&self, u: &Subspace<F::Elem>, v: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        let mut out = Subspace::zero(self.dim);
        for a in u.basis() {
            for b in v.basis() {
                out.insert(&self.field, &self.bracket(a, b));
            }
        }
        out
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn ideal_generated(&self, gens: &[Vec<F::Elem>]) -> Subspace<F::Elem> {
        self.closure(gens, true, true)
    }

    /// `span(gens) * A`, the right ideal generated by `gens`.
    pub fn right_ideal_generated(&self, gens: &[Vec<F::Elem>]) -> Subspace<F::Elem> {
        self.closure(gens, false, true)
    }

    fn closure(&self, gens: &[Vec<F::Elem>], left: bool, right: bool) -> Subspace<F::Elem> {
        let f = &self.field;
        let mut space = Subspace::zero(self.dim);
        let mut work: Vec<Vec<F::Elem>> = Vec::new();
        for g in gens {
            if space.insert(f, g) {
                work.push(g.clone());
            }
        }
        while let Some(v) = work.pop() {
            for i in 0..self.dim {
                if left {
                    let w = self.mul_basis_left(i, &v);
                    if space.insert(f, &w) {
                        work.push(w);
                    }
                }
                if right {
                    let w = self.mul_basis_right(&v, i);
                    if space.insert(f, &w) {
                        work.push(w);
                    }
                }
            }
        }
        space
    }

    pub fn is_ideal(&self, s: &Subspace<F::Elem>) -> bool {
        s.basis().iter().all(|v| {
            (0..self.dim).all(|i| {
                s.contains(&self.field, &self.mul_basis_left(i, v)) && s.contains(&self.field, &self.mul_basis_right(v, i))
            })
        })
    }

    /// Ideal generated by all `[e_i, e_j]`.
    pub fn commutator_ideal(&self) -> Subspace<F::Elem> {
        let mut gens = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let e_i = self.basis_elem(i);
                let e_j = self.basis_elem(j);
                gens.push(self.bracket(&e_i, &e_j));
            }
        }
        self.ideal_generated(&gens)
    }

    /// Subalgebra generated by `gens`, with or without the unit.
    pub fn subalgebra_generated(&self, gens: &[Vec<F::Elem>], unital: bool) -> Subspace<F::Elem> {
        let f = &self.field;
        let mut space = Subspace::zero(self.dim);
        let mut done: Vec<Vec<F::Elem>> = Vec::new();
        let mut work: Vec<Vec<F::Elem>> = Vec::new();
        if unital {
            space.insert(f, &self.one);
            done.push(self.one.clone());
        }
        for g in gens {
            if space.insert(f, g) {
                work.push(g.clone());
            }
        }
        while let Some(v) = work.pop() {
            let mut products = vec![self.mul(&v, &v)];
            for w in &done {
                products.push(self.mul(&v, w));
                products.push(self.mul(w, &v));
            }
            done.push(v);
            for p in products {
                if space.insert(f, &p) {
                    work.push(p);
                }
            }
        }
        space
    }

    /// `I^m` for `m >= 1`.
    pub fn ideal_power(&self, ideal: &Subspace<F::Elem>, m: usize) -> Subspace<F::Elem> {
        let mut acc = ideal.clone();
        for _ in 1..m {
            if acc.is_zero() {
                break;
            }
            acc = self.product(&acc, ideal);
        }
        acc
    }

    /// Least `m` with `S^m = 0`, or `None` if the powers stabilize at a
    /// nonzero subspace. Returns 0 for `S = 0`.
    pub fn nilpotency_index(&self, s: &Subspace<F::Elem>) -> Option<usize> {
        if s.is_zero() {
            return Some(0);
        }
        let mut acc = s.clone();
        let mut m = 1;
        loop {
            let next = self.product(&acc, s);
            m += 1;
            if next.is_zero() {
                return Some(m);
            }
            if next == acc {
                return None;
            }
            acc = next;
        }
    }

    /// `A/I` on the images of the standard basis vectors outside the pivots
    /// of `I`.
    pub fn quotient(&self, ideal: &Subspace<F::Elem>) -> Result<Algebra<F>, AlgebraError> {
        if ideal.ambient_dim() != self.dim || !self.is_ideal(ideal) {
            return Err(AlgebraError::NotAnIdeal);
        }
        if ideal.is_full() {
            return Err(AlgebraError::BadTable("quotient by the whole algebra is the zero ring".into()));
        }
        let keep = ideal.complement_indices();
        let project = |v: &[F::Elem]| -> Vec<F::Elem> {
            let r = ideal.reduce(&self.field, v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let table = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| project(&self.structure(i, j))).collect())
            .collect();
        let one = project(&self.one);
        Algebra::from_constants(self.field.clone(), table, one)
    }

    /// Coordinates of `x + I` in [`Algebra::quotient`]`(I)`.
    pub fn quotient_map(&self, ideal: &Subspace<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
        let r = ideal.reduce(&self.field, x);
        ideal.complement_indices().iter().map(|&c| r[c].clone()).collect()
    }

    /// Span of the nilpotent elements. Exhaustive when `|A| <= bound`;
    /// otherwise the span of nilpotent basis elements, nilpotent sums of
    /// basis pairs and `radical` (a lower bound).
    pub fn nilpotent_set_span(
        &self,
        bound: u64,
        radical: Option<&Subspace<F::Elem>>,
    ) -> Result<NilpotentSpan<F::Elem>, AlgebraError> {
        let f = &self.field;
        if let Ok(bitmap) = self.nilpotent_bitmap(bound) {
            let mut span = Subspace::zero(self.dim);
            for (idx, &nil) in bitmap.iter().enumerate() {
                if nil {
                    span.insert(f, &self.element_at(idx as u64));
                    if span.is_full() {
                        break;
                    }
                }
            }
            return Ok(NilpotentSpan { span, exact: true });
        }
        let mut span = radical.cloned().unwrap_or_else(|| Subspace::zero(self.dim));
        for i in 0..self.dim {
            let e_i = self.basis_elem(i);
            if self.is_nilpotent_elem(&e_i) {
                span.insert(f, &e_i);
            }
            for j in i + 1..self.dim {
                let s = self.add(&e_i, &self.basis_elem(j));
                if self.is_nilpotent_elem(&s) {
                    span.insert(f, &s);
                }
            }
        }
        Ok(NilpotentSpan { span, exact: false })
    }
}
