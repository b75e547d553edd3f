//! Exact field arithmetic.
//!
//! Two concrete fields are provided: [`FiniteField`] covers prime fields and
//! extensions `F_{p^k}` given by an explicit irreducible modulus, and
//! [`RationalFunctionField`] covers `F_p(t)`, the standard example of an
//! imperfect field. Everything downstream is generic over the [`Field`] trait.

mod finite;
pub mod poly;
mod ratfn;

use std::fmt;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub use finite::FiniteField;
pub use poly::poly_gcd;
pub use ratfn::{RatFn, RationalFunctionField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CompositeP(u32),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("extension degree {0} exceeds the supported bound of 8")]
    DegreeTooLarge(u32),
    #[error("field of order {0} is too large to tabulate")]
    TooLarge(u64),
    #[error("element has no p-th root")]
    NoPthRoot,
    #[error("malformed field element: {0}")]
    BadElement(String),
    #[error("malformed field spec: {0}")]
    BadSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Prime,
    Extension,
    RationalFunction,
}

/// Serializable description of a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    /// Ascending coefficients of a monic irreducible polynomial of degree `k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { kind: FieldKind::Prime, p, k: None, modulus: None }
    }

    pub fn extension(p: u32, modulus: Vec<u32>) -> Self {
        let k = modulus.len().saturating_sub(1) as u32;
        FieldSpec { kind: FieldKind::Extension, p, k: Some(k), modulus: Some(modulus) }
    }

    pub fn rational_function(p: u32) -> Self {
        FieldSpec { kind: FieldKind::RationalFunction, p, k: None, modulus: None }
    }
}

/// Interface shared by every exact field used in the crate.
///
/// Elements are plain values; the field handle carries whatever tables the
/// arithmetic needs. Finite fields additionally number their elements
/// `0..order`, which fixes the deterministic scan order used by all
/// exhaustive searches.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `acc + a*b`.
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(acc, &self.mul(a, b))
    }

    fn from_int(&self, n: i64) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u64)
    }

    /// Returns `b` with `b^p = a`, or [`FieldError::NoPthRoot`].
    fn pth_root(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;

    /// Number of elements, or `None` for an infinite field.
    fn order(&self) -> Option<u64>;
    fn is_perfect(&self) -> bool;

    /// Element number `i` in scan order (finite fields only).
    fn element_at(&self, i: u64) -> Option<Self::Elem>;
    /// Inverse of [`Field::element_at`].
    fn index_of(&self, a: &Self::Elem) -> Option<u64>;

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Degree over the prime field, for finite fields.
    fn prime_degree(&self) -> Option<u32> {
        None
    }
    /// Coordinates over `F_p` in the power basis `1, u, u^2, ...`.
    fn to_prime_vector(&self, _a: &Self::Elem) -> Option<Vec<u32>> {
        None
    }
    fn from_prime_vector(&self, _v: &[u32]) -> Option<Self::Elem> {
        None
    }

    /// For `F_p(t)` and a power `q` of `p`: the `g_s` with
    /// `a = sum_{s < q} t^s g_s(t^q)`, each returned with `t^q` renamed to
    /// `t`. `None` for other fields.
    fn frobenius_components(&self, _a: &Self::Elem, _q: u64) -> Option<Vec<Self::Elem>> {
        None
    }

    fn encode(&self, a: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem, FieldError>;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
}

/// A field built from a [`FieldSpec`] whose kind is only known at runtime.
#[derive(Debug, Clone)]
pub enum AnyField {
    Finite(FiniteField),
    RationalFunction(RationalFunctionField),
}

impl AnyField {
    pub fn is_infinite(&self) -> bool {
        matches!(self, AnyField::RationalFunction(_))
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            AnyField::Finite(f) => f.order(),
            AnyField::RationalFunction(_) => None,
        }
    }
}

/// Validates `spec` and builds the corresponding field.
pub fn make_field(spec: &FieldSpec) -> Result<AnyField, FieldError> {
    match spec.kind {
        FieldKind::Prime => {
            if spec.modulus.as_ref().is_some_and(|m| m.len() > 2) || spec.k.is_some_and(|k| k != 1) {
                return Err(FieldError::BadSpec("prime field with k != 1".into()));
            }
            Ok(AnyField::Finite(FiniteField::prime(spec.p)?))
        }
        FieldKind::Extension => {
            let modulus = spec
                .modulus
                .clone()
                .ok_or_else(|| FieldError::BadSpec("extension field without modulus".into()))?;
            if let Some(k) = spec.k {
                if modulus.len() != k as usize + 1 {
                    return Err(FieldError::BadModulus(format!(
                        "degree {} does not match k = {k}",
                        modulus.len().saturating_sub(1)
                    )));
                }
            }
            Ok(AnyField::Finite(FiniteField::extension(spec.p, &modulus)?))
        }
        FieldKind::RationalFunction => {
            Ok(AnyField::RationalFunction(RationalFunctionField::new(spec.p)?))
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
