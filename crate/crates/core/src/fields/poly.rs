//! Dense univariate polynomials over a [`Field`], stored as ascending
//! coefficient vectors with no trailing zeros (the zero polynomial is empty).

use super::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.mul_add(&out[i + j], x, y);
        }
    }
    trim(f, out)
}

/// Quotient and remainder. Panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("trimmed polynomial has nonzero lead");
    let mut r: Vec<F::Elem> = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(f, r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    for d in (db..r.len()).rev() {
        if f.is_zero(&r[d]) {
            continue;
        }
        let c = f.mul(&r[d], &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            let idx = d - db + i;
            r[idx] = f.sub(&r[idx], &f.mul(&c, bc));
        }
        q[d - db] = c;
    }
    r.truncate(db);
    (trim(f, q), trim(f, r))
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = f.inv(lead).expect("trimmed polynomial has nonzero lead");
            scale(f, a, &inv)
        }
    }
}

/// Monic greatest common divisor by Euclid; `gcd(f, 0) = monic(f)`.
pub fn poly_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let mut a = trim(f, a.to_vec());
    let mut b = trim(f, b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn lcm<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let g = poly_gcd(f, a, b);
    let (q, _) = divrem(f, &mul(f, a, b), &g);
    monic(f, &q)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Option<Poly<F::Elem>> {
    // extended Euclid tracking only the coefficient of `a`
    let (_, a) = divrem(f, a, m);
    let (mut r0, mut r1) = (m.to_vec(), a);
    let (mut s0, mut s1): (Poly<F::Elem>, Poly<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = f.inv(&r0[0])?;
    let (_, out) = divrem(f, &scale(f, &s0, &c), m);
    Some(out)
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_int(i as i64), c))
        .collect();
    trim(f, out)
}

/// Product of the distinct monic irreducible factors of `a` over a perfect
/// field (the separable radical). Returns `None` if a needed p-th root does
/// not exist in `f`.
pub fn separable_radical<F: Field>(f: &F, a: &[F::Elem]) -> Option<Poly<F::Elem>> {
    let a = monic(f, &trim(f, a.to_vec()));
    if a.len() <= 1 {
        return Some(a);
    }
    let da = derivative(f, &a);
    if da.is_empty() {
        // a(T) = b(T^p) = (b^{1/p}(T))^p with p-th roots taken coefficientwise
        let p = f.characteristic() as usize;
        let mut root = Vec::with_capacity(a.len() / p + 1);
        for (i, c) in a.iter().enumerate() {
            if i % p == 0 {
                root.push(f.pth_root(c).ok()?);
            }
        }
        return separable_radical(f, &trim(f, root));
    }
    let c = poly_gcd(f, &a, &da);
    let (w, _) = divrem(f, &a, &c);
    let rc = separable_radical(f, &c)?;
    Some(lcm(f, &w, &rc))
}

pub fn is_separable<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    let g = poly_gcd(f, a, &derivative(f, a));
    g.len() == 1
}
