//! Exhaustive element scans over finite algebras.
//!
//! Elements are numbered by reading their coordinates as base-`q` digits with
//! `coords[0]` most significant, so scan order is lexicographic on
//! coordinates.

use super::{Algebra, AlgebraError};
use crate::fields::Field;

/// Walks all coordinate vectors of `F_q^n` in scan order, reporting which
/// coordinates changed and by how much at each step.
///
/// The deltas let callers maintain linear images of the current vector in
/// O(n) per step instead of recomputing them.
pub struct Odometer<E> {
    digits: Vec<usize>,
    coords: Vec<E>,
    elems: Vec<E>,
    step_up: Vec<E>,
    wrap: E,
    changes: Vec<(usize, E)>,
    index: u64,
}

impl<E: Clone> Odometer<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let q = f.order().expect("odometer needs a finite field") as usize;
        let elems: Vec<E> = (0..q as u64).map(|i| f.element_at(i).unwrap()).collect();
        let step_up = (0..q - 1).map(|d| f.sub(&elems[d + 1], &elems[d])).collect();
        let wrap = f.sub(&elems[0], &elems[q - 1]);
        Odometer {
            digits: vec![0; n],
            coords: vec![elems[0].clone(); n],
            elems,
            step_up,
            wrap,
            changes: Vec::with_capacity(n),
            index: 0,
        }
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Moves to the next vector and returns the `(position, delta)` pairs
    /// applied, or `None` after the last vector.
    pub fn advance(&mut self) -> Option<&[(usize, E)]> {
        self.changes.clear();
        let q = self.elems.len();
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            let d = self.digits[pos];
            if d + 1 < q {
                self.digits[pos] = d + 1;
                self.coords[pos] = self.elems[d + 1].clone();
                self.changes.push((pos, self.step_up[d].clone()));
                self.index += 1;
                return Some(&self.changes);
            }
            self.digits[pos] = 0;
            self.coords[pos] = self.elems[0].clone();
            self.changes.push((pos, self.wrap.clone()));
        }
    }
}

impl<F: Field> Algebra<F> {
    /// Scan-order index of `x`. Panics over an infinite field.
    pub fn index_of(&self, x: &[F::Elem]) -> u64 {
        let q = self.field.order().expect("finite field");
        x.iter().fold(0u64, |acc, c| acc * q + self.field.index_of(c).unwrap())
    }

    /// Inverse of [`Algebra::index_of`].
    pub fn element_at(&self, mut idx: u64) -> Vec<F::Elem> {
        let q = self.field.order().expect("finite field");
        let mut v = self.zero();
        for c in v.iter_mut().rev() {
            *c = self.field.element_at(idx % q).unwrap();
            idx /= q;
        }
        v
    }

    /// Calls `visit(index, x)` on every element in scan order, stopping early
    /// when it returns `false`.
    pub fn for_each_element(&self, mut visit: impl FnMut(u64, &[F::Elem]) -> bool) {
        let mut odo = Odometer::new(&self.field, self.dim);
        loop {
            if !visit(odo.index(), odo.coords()) {
                return;
            }
            if odo.advance().is_none() {
                return;
            }
        }
    }

    /// `bitmap[idx]` is true iff element `idx` is a unit.
    pub fn unit_bitmap(&self, bound: u64) -> Result<Vec<bool>, AlgebraError> {
        let card = self.check_card(bound, "algebra cardinality for unit enumeration")?;
        let mut out = Vec::with_capacity(card as usize);
        self.for_each_element(|_, x| {
            out.push(self.is_unit(x));
            true
        });
        Ok(out)
    }

    /// `bitmap[idx]` is true iff element `idx` is nilpotent.
    pub fn nilpotent_bitmap(&self, bound: u64) -> Result<Vec<bool>, AlgebraError> {
        let card = self.check_card(bound, "algebra cardinality for nilpotent enumeration")?;
        let mut squarings = 0;
        while (1usize << squarings) < self.dim {
            squarings += 1;
        }
        let mut out = Vec::with_capacity(card as usize);
        self.for_each_element(|_, x| {
            // x is nilpotent iff x^dim = 0; square up past dim
            let mut y = x.to_vec();
            for _ in 0..squarings {
                if self.is_zero(&y) {
                    break;
                }
                y = self.mul(&y, &y);
            }
            out.push(self.is_zero(&y));
            true
        });
        Ok(out)
    }
}
