use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde_json::Value;

use super::{is_prime, Field, FieldError, FieldKind, FieldSpec};

const MAX_TABULATED_ORDER: u64 = 1 << 24;

/// `F_q` for `q = p^k`.
///
/// Elements are encoded as integers in `[0, q)` whose base-`p` digits are the
/// coefficients of the element as a polynomial in the generator `u`
/// (least significant digit = constant term). Extension multiplication goes
/// through discrete log tables built once at construction.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive element `g`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}[u]/({:?})", self.inner.p, self.inner.modulus)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::CompositeP(p));
        }
        if p as u64 >= 1 << 31 {
            return Err(FieldError::TooLarge(p as u64));
        }
        Ok(FiniteField {
            inner: Arc::new(Inner { p, k: 1, q: p, modulus: vec![0, 1], exp: Vec::new(), log: Vec::new() }),
        })
    }

    /// Extension field from an explicit monic irreducible modulus
    /// (ascending coefficients).
    pub fn extension(p: u32, modulus: &[u32]) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::CompositeP(p));
        }
        if modulus.len() < 2 {
            return Err(FieldError::BadModulus("degree must be at least 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus(format!("coefficients must lie in [0, {p})")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(FieldError::BadModulus("modulus must be monic".into()));
        }
        let k = (modulus.len() - 1) as u32;
        if k == 1 {
            return FiniteField::prime(p);
        }
        if k > 8 {
            return Err(FieldError::DegreeTooLarge(k));
        }
        let q = (p as u64).pow(k);
        if q > MAX_TABULATED_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        if !is_irreducible(p, modulus) {
            return Err(FieldError::ReducibleModulus { p });
        }
        let q = q as u32;
        let (exp, log) = build_log_tables(p, k, q, modulus);
        Ok(FiniteField { inner: Arc::new(Inner { p, k, q, modulus: modulus.to_vec(), exp, log }) })
    }

    /// `F_q` with a built-in modulus for the small non-prime orders.
    pub fn gf(q: u32) -> Result<Self, FieldError> {
        let modulus: &[u32] = match q {
            4 => &[1, 1, 1],
            8 => &[1, 1, 0, 1],
            9 => &[1, 0, 1],
            16 => &[1, 1, 0, 0, 1],
            25 => &[2, 1, 1],
            27 => &[1, 2, 0, 1],
            49 => &[1, 0, 1],
            _ => return FiniteField::prime(q),
        };
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        FiniteField::extension(p, modulus)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Coordinates over the prime field (base-`p` digits, constant term first).
    pub fn prime_coords(&self, a: u32) -> Vec<u32> {
        let p = self.inner.p;
        let mut a = a;
        (0..self.inner.k)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_prime_coords(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0, |acc, &d| acc * self.inner.p + d)
    }

    /// The adjoined generator `u`; prime fields return 1.
    pub fn generator_u(&self) -> u32 {
        if self.inner.k == 1 {
            1
        } else {
            self.inner.p
        }
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.inner.k {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn digit_neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.inner.k {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }
}

impl Field for FiniteField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.inner.p
    }

    fn spec(&self) -> FieldSpec {
        if self.inner.k == 1 {
            FieldSpec::prime(self.inner.p)
        } else {
            FieldSpec {
                kind: FieldKind::Extension,
                p: self.inner.p,
                k: Some(self.inner.k),
                modulus: Some(self.inner.modulus.clone()),
            }
        }
    }

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 {
            a ^ b
        } else if inner.k == 1 {
            let s = a + b;
            if s >= inner.p {
                s - inner.p
            } else {
                s
            }
        } else {
            self.digit_add(*a, *b)
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 || *a == 0 {
            *a
        } else if inner.k == 1 {
            inner.p - a
        } else {
            self.digit_neg(*a)
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        if inner.k == 1 {
            ((*a as u64 * *b as u64) % inner.p as u64) as u32
        } else {
            inner.exp[(inner.log[*a as usize] + inner.log[*b as usize]) as usize]
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let inner = &*self.inner;
        if inner.k == 1 {
            Some(self.pow(a, (inner.p - 2) as u64))
        } else {
            let order = inner.q - 1;
            Some(inner.exp[((order - inner.log[*a as usize]) % order) as usize])
        }
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }

    fn pth_root(&self, a: &u32) -> Result<u32, FieldError> {
        // x -> x^p is an automorphism of order k, so its inverse is x -> x^{p^(k-1)}.
        let e = (self.inner.p as u64).pow(self.inner.k - 1);
        Ok(self.pow(a, e))
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q as u64)
    }

    fn is_perfect(&self) -> bool {
        true
    }

    fn element_at(&self, i: u64) -> Option<u32> {
        (i < self.inner.q as u64).then_some(i as u32)
    }

    fn index_of(&self, a: &u32) -> Option<u64> {
        Some(*a as u64)
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.inner.q)
    }

    fn prime_degree(&self) -> Option<u32> {
        Some(self.inner.k)
    }

    fn to_prime_vector(&self, a: &u32) -> Option<Vec<u32>> {
        Some(self.prime_coords(*a))
    }

    fn from_prime_vector(&self, v: &[u32]) -> Option<u32> {
        Some(self.from_prime_coords(v))
    }

    fn encode(&self, a: &u32) -> Value {
        if self.inner.k == 1 {
            Value::from(*a)
        } else {
            Value::from(self.prime_coords(*a))
        }
    }

    fn decode(&self, v: &Value) -> Result<u32, FieldError> {
        let p = self.inner.p;
        let digit = |x: &Value| -> Result<u32, FieldError> {
            x.as_u64()
                .filter(|&d| d < p as u64)
                .map(|d| d as u32)
                .ok_or_else(|| FieldError::BadElement(format!("expected an integer in [0, {p}), got {x}")))
        };
        if self.inner.k == 1 {
            digit(v)
        } else {
            let arr = v
                .as_array()
                .filter(|a| a.len() == self.inner.k as usize)
                .ok_or_else(|| FieldError::BadElement(format!("expected {} coefficients, got {v}", self.inner.k)))?;
            let coords = arr.iter().map(digit).collect::<Result<Vec<_>, _>>()?;
            Ok(self.from_prime_coords(&coords))
        }
    }

    fn fmt_elem(&self, a: &u32) -> String {
        if self.inner.k == 1 {
            return a.to_string();
        }
        let terms: Vec<String> = self
            .prime_coords(*a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "u".into(),
                (1, c) => format!("{c}u"),
                (i, 1) => format!("u^{i}"),
                (i, c) => format!("{c}u^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Product of two polynomials over `F_p` reduced modulo the monic `modulus`.
fn mulmod(p: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

fn encode_digits(p: u32, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode_digits(p: u32, k: u32, mut a: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn build_log_tables(p: u32, k: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let order = q - 1;
    for cand in 2..q.max(3) {
        let g = decode_digits(p, k, cand);
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut cur = decode_digits(p, k, 1);
        let mut ok = true;
        for i in 0..order {
            let enc = encode_digits(p, &cur);
            if i > 0 && enc == 1 {
                ok = false;
                break;
            }
            exp.push(enc);
            cur = mulmod(p, &cur, &g, modulus);
        }
        if !ok {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        return (doubled, log);
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// Exhaustive search for a monic factor of degree at most `k/2`.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = decode_digits(p, d as u32, low as u32);
            g.push(1);
            if divides(p, &g, modulus) {
                return false;
            }
        }
    }
    true
}

fn divides(p: u32, g: &[u32], f: &[u32]) -> bool {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    for d in (dg..r.len()).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in g.iter().enumerate() {
            let idx = d - dg + i;
            r[idx] = (r[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(f: &FiniteField) -> Vec<u32> {
        (0..f.order().unwrap()).map(|i| f.element_at(i).unwrap()).collect()
    }

    #[test]
    fn f4_modulus_has_no_root() {
        // u^2 + u + 1 at u = 0 and u = 1
        for u in 0..2u32 {
            assert_eq!((u * u + u + 1) % 2, 1);
        }
        let f4 = FiniteField::extension(2, &[1, 1, 1]).unwrap();
        assert_eq!(f4.order(), Some(4));
    }

    #[test]
    fn frobenius_and_roots_in_f4() {
        let f4 = FiniteField::gf(4).unwrap();
        let u = f4.generator_u();
        let u_plus_1 = f4.add(&u, &1);
        assert_eq!(f4.frobenius(&u), u_plus_1);
        assert_eq!(f4.pth_root(&u).unwrap(), u_plus_1);
        assert_eq!(f4.mul(&u_plus_1, &u_plus_1), u);
        assert_eq!(f4.frobenius(&1), 1);
    }

    #[test]
    fn cube_root_in_f3() {
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(f3.pth_root(&2).unwrap(), 2);
        assert_eq!(f3.pow(&2, 3), 2);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::gf(q).unwrap();
            let els = all(&f);
            for a in &els {
                assert_eq!(f.add(a, &f.neg(a)), 0);
                if *a != 0 {
                    assert_eq!(f.mul(a, &f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                assert_eq!(f.pth_root(&f.frobenius(a)).unwrap(), *a);
                assert_eq!(f.frobenius(&f.pth_root(a).unwrap()), *a);
                for b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if q <= 16 {
                        for c in &els {
                            assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                            assert_eq!(f.mul(a, &f.mul(b, c)), f.mul(&f.mul(a, b), c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_homomorphism() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27, 49] {
            let f = FiniteField::gf(q).unwrap();
            let els = all(&f);
            for a in &els {
                for b in &els {
                    assert_eq!(f.frobenius(&f.add(a, b)), f.add(&f.frobenius(a), &f.frobenius(b)));
                    assert_eq!(f.frobenius(&f.mul(a, b)), f.mul(&f.frobenius(a), &f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(FiniteField::extension(2, &[1, 0, 1]), Err(FieldError::ReducibleModulus { .. })));
        assert!(matches!(FiniteField::extension(3, &[1, 0, 2]), Err(FieldError::BadModulus(_))));
        assert!(matches!(FiniteField::extension(2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]), Err(FieldError::DegreeTooLarge(10))));
        // u^4 + u^2 + 1 = (u^2 + u + 1)^2 over F_2 has no roots but is reducible
        assert!(matches!(FiniteField::extension(2, &[1, 0, 1, 0, 1]), Err(FieldError::ReducibleModulus { .. })));
    }

    #[test]
    fn element_encoding_round_trip() {
        let f9 = FiniteField::gf(9).unwrap();
        for a in all(&f9) {
            let v = f9.encode(&a);
            assert_eq!(f9.decode(&v).unwrap(), a);
        }
        assert!(f9.decode(&serde_json::json!([3, 0])).is_err());
        assert!(f9.decode(&serde_json::json!(1)).is_err());
    }
}
