//! Jacobson radical over finite fields.
//!
//! The main method is the characteristic-`p` trace chain: view `A` as an
//! `F_p`-algebra of dimension `N` acting on itself, set `I_{-1} = A` and
//!
//! ```text
//! I_l = { x in I_{l-1} : g_l(xy) = 0 for all y in A },
//! g_l(z) = (Tr(Z^{p^l}) mod p^{l+1}) / p^l,
//! ```
//!
//! where `Z` is any integer lift of the `F_p`-matrix of left multiplication
//! by `z`. Each `g_l` is `F_p`-linear on `I_{l-1}` and `I_l` is the radical
//! once `p^l > N`. An exhaustive quasi-regularity test serves as an oracle.

use serde::Serialize;

use super::{Algebra, AlgebraError, Odometer};
use crate::fields::{Field, FiniteField};
use crate::linalg::{self, Matrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalMethod {
    TraceChain,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport<E> {
    pub radical: Subspace<E>,
    pub method: RadicalMethod,
    /// Least `m` with `J^m = 0`; 0 when `J = 0`.
    pub nilpotency_index: usize,
}

impl<F: Field> Algebra<F> {
    /// Jacobson radical by the trace chain. Requires a finite field.
    pub fn radical(&self) -> Result<RadicalReport<F::Elem>, AlgebraError> {
        let radical = self.trace_chain()?;
        let nilpotency_index = self
            .nilpotency_index(&radical)
            .expect("the trace chain returned a non-nilpotent subspace");
        Ok(RadicalReport { radical, method: RadicalMethod::TraceChain, nilpotency_index })
    }

    /// Exhaustive radical: `x` is in `J(A)` iff `1 - ax` is a unit for every
    /// `a`. Requires `|A| <= bound`.
    pub fn radical_brute_oracle(&self, bound: u64) -> Result<Subspace<F::Elem>, AlgebraError> {
        let f = &self.field;
        let units = self.unit_bitmap(bound)?;
        let n = self.dim;
        let mut members = Vec::new();
        self.for_each_element(|_, x| {
            // images e_i x, so that ax = sum a_i (e_i x)
            let images: Vec<Vec<F::Elem>> = (0..n).map(|i| self.mul_basis_left(i, x)).collect();
            let mut ax = self.zero();
            let mut odo = Odometer::new(f, n);
            let quasi_regular = loop {
                let r = self.sub(&self.one, &ax);
                if !units[self.index_of(&r) as usize] {
                    break false;
                }
                match odo.advance() {
                    None => break true,
                    Some(changes) => {
                        for (pos, delta) in changes {
                            linalg::axpy(f, &mut ax, delta, &images[*pos]);
                        }
                    }
                }
            };
            if quasi_regular {
                members.push(x.to_vec());
            }
            true
        });
        Ok(self.span(members))
    }

    fn trace_chain(&self) -> Result<Subspace<F::Elem>, AlgebraError> {
        let f = &self.field;
        let unsupported = || AlgebraError::UnsupportedField("the trace-chain radical needs a finite field".into());
        let k = f.prime_degree().ok_or_else(unsupported)? as usize;
        let p = f.characteristic() as u64;
        let fp = FiniteField::prime(p as u32)?;
        let n = self.dim;
        let big_n = n * k;

        // F_p-basis of A: u^s e_i at index i * k + s
        let powers_u: Vec<F::Elem> = {
            let mut v = Vec::with_capacity(k);
            let mut cur = f.one();
            let mut u = vec![0u32; k];
            if k > 1 {
                u[1] = 1;
            }
            let u = f.from_prime_vector(&u).ok_or_else(unsupported)?;
            for _ in 0..k {
                v.push(cur.clone());
                cur = f.mul(&cur, &u);
            }
            v
        };
        let to_fq = |c: &[u32]| -> Vec<F::Elem> {
            (0..n).map(|i| f.from_prime_vector(&c[i * k..(i + 1) * k]).unwrap()).collect()
        };
        let to_fp = |x: &[F::Elem]| -> Vec<u32> { x.iter().flat_map(|c| f.to_prime_vector(c).unwrap()).collect() };
        let fp_basis: Vec<Vec<F::Elem>> = (0..big_n)
            .map(|b| {
                let mut v = self.zero();
                v[b / k] = powers_u[b % k].clone();
                v
            })
            .collect();
        // integer matrix of left multiplication by z over F_p
        let lift = |z: &[F::Elem]| -> Vec<u64> {
            let mut m = vec![0u64; big_n * big_n];
            for (col, b) in fp_basis.iter().enumerate() {
                let image = to_fp(&self.mul(z, b));
                for (row, &c) in image.iter().enumerate() {
                    m[row * big_n + col] = c as u64;
                }
            }
            m
        };

        let mut top = 0u32;
        while p.pow(top + 1) <= big_n as u64 {
            top += 1;
        }
        let mut current: Vec<Vec<u32>> = (0..big_n).map(|i| linalg::unit_vector(&fp, big_n, i)).collect();
        for l in 0..=top {
            if current.is_empty() {
                break;
            }
            let modulus = p.pow(l + 1);
            let scale = p.pow(l);
            let g = |z: &[F::Elem]| -> u32 {
                let m = int_matrix_power(&lift(z), big_n, scale, modulus);
                let tr = (0..big_n).fold(0u64, |acc, i| (acc + m[i * big_n + i]) % modulus);
                debug_assert_eq!(tr % scale, 0, "trace functional is not divisible on the chain");
                ((tr / scale) % p) as u32
            };
            // rows: current basis vectors; columns: y in the F_p-basis
            let elems: Vec<Vec<F::Elem>> = current.iter().map(|c| to_fq(c)).collect();
            let rows: Vec<Vec<u32>> = elems.iter().map(|z| fp_basis.iter().map(|y| g(&self.mul(z, y))).collect()).collect();
            let gmat = Matrix::from_rows(rows).transpose();
            let ker = linalg::kernel(&fp, &gmat);
            current = ker
                .basis()
                .iter()
                .map(|c| {
                    let mut v = vec![0u32; big_n];
                    for (coef, b) in c.iter().zip(&current) {
                        linalg::axpy(&fp, &mut v, coef, b);
                    }
                    v
                })
                .collect();
        }
        Ok(self.span(current.iter().map(|c| to_fq(c)).collect()))
    }
}

/// `m^e mod modulus` for a square integer matrix.
fn int_matrix_power(m: &[u64], n: usize, mut e: u64, modulus: u64) -> Vec<u64> {
    let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
                }
            }
        }
        out
    };
    let mut base: Vec<u64> = m.iter().map(|x| x % modulus).collect();
    let mut acc: Vec<u64> = (0..n * n).map(|i| u64::from(i / n == i % n)).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}
