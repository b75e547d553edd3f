use rand::Rng;
use serde_json::Value;

use super::poly;
use super::{Field, FieldError, FieldSpec, FiniteField};

/// Element of `F_p(t)` in canonical form: `den` monic, `gcd(num, den) = 1`,
/// zero stored as `0/1`. Coefficients are ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Vec<u32>,
    den: Vec<u32>,
}

impl RatFn {
    pub fn numerator(&self) -> &[u32] {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }
}

/// The rational function field `F_p(t)`. Not perfect: `t` has no p-th root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionField {
    base: FiniteField,
}

impl RationalFunctionField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        Ok(RationalFunctionField { base: FiniteField::prime(p)? })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    /// Builds `num/den` in canonical form. Panics on a zero denominator.
    pub fn frac(&self, num: &[u32], den: &[u32]) -> RatFn {
        let b = &self.base;
        let p = b.p();
        let num = poly::trim(b, num.iter().map(|c| c % p).collect());
        let den = poly::trim(b, den.iter().map(|c| c % p).collect());
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFn { num: Vec::new(), den: vec![1] };
        }
        let g = poly::poly_gcd(b, &num, &den);
        let (mut num, _) = poly::divrem(b, &num, &g);
        let (mut den, _) = poly::divrem(b, &den, &g);
        let lead = b.inv(den.last().unwrap()).unwrap();
        num = poly::scale(b, &num, &lead);
        den = poly::scale(b, &den, &lead);
        RatFn { num, den }
    }

    pub fn poly(&self, coeffs: &[u32]) -> RatFn {
        self.frac(coeffs, &[1])
    }

    /// The transcendental `t`.
    pub fn t(&self) -> RatFn {
        self.poly(&[0, 1])
    }

    fn in_frobenius_image(&self, a: &[u32]) -> Option<Vec<u32>> {
        let p = self.base.p() as usize;
        let mut root = Vec::new();
        for (i, &c) in a.iter().enumerate() {
            if i % p == 0 {
                root.push(c);
            } else if c != 0 {
                return None;
            }
        }
        Some(root)
    }
}

impl Field for RationalFunctionField {
    type Elem = RatFn;

    fn characteristic(&self) -> u32 {
        self.base.p()
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::rational_function(self.base.p())
    }

    fn zero(&self) -> RatFn {
        RatFn { num: Vec::new(), den: vec![1] }
    }

    fn one(&self) -> RatFn {
        RatFn { num: vec![1], den: vec![1] }
    }

    fn is_zero(&self, a: &RatFn) -> bool {
        a.num.is_empty()
    }

    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        let f = &self.base;
        if a.den == b.den {
            return self.frac(&poly::add(f, &a.num, &b.num), &a.den);
        }
        let num = poly::add(f, &poly::mul(f, &a.num, &b.den), &poly::mul(f, &b.num, &a.den));
        self.frac(&num, &poly::mul(f, &a.den, &b.den))
    }

    fn neg(&self, a: &RatFn) -> RatFn {
        let f = &self.base;
        RatFn { num: a.num.iter().map(|c| f.neg(c)).collect(), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        let f = &self.base;
        self.frac(&poly::mul(f, &a.num, &b.num), &poly::mul(f, &a.den, &b.den))
    }

    fn inv(&self, a: &RatFn) -> Option<RatFn> {
        if a.num.is_empty() {
            None
        } else {
            Some(self.frac(&a.den, &a.num))
        }
    }

    fn from_int(&self, n: i64) -> RatFn {
        self.poly(&[self.base.from_int(n)])
    }

    /// Succeeds iff numerator and denominator both lie in `F_p[t^p]`.
    fn pth_root(&self, a: &RatFn) -> Result<RatFn, FieldError> {
        let num = self.in_frobenius_image(&a.num).ok_or(FieldError::NoPthRoot)?;
        let den = self.in_frobenius_image(&a.den).ok_or(FieldError::NoPthRoot)?;
        Ok(self.frac(&num, &den))
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn is_perfect(&self) -> bool {
        false
    }

    fn element_at(&self, _i: u64) -> Option<RatFn> {
        None
    }

    fn index_of(&self, _a: &RatFn) -> Option<u64> {
        None
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> RatFn {
        let p = self.base.p();
        let num: Vec<u32> = (0..3).map(|_| rng.gen_range(0..p)).collect();
        let mut den: Vec<u32> = (0..2).map(|_| rng.gen_range(0..p)).collect();
        den.push(1);
        if rng.gen_bool(0.5) {
            den = vec![1];
        }
        self.frac(&num, &den)
    }

    fn frobenius_components(&self, a: &RatFn, q: u64) -> Option<Vec<RatFn>> {
        let f = &self.base;
        let q = q as usize;
        // a = n d^(q-1) / d^q and d(t)^q = d(t^q) over F_p
        let mut n = a.num.clone();
        for _ in 1..q {
            n = poly::mul(f, &n, &a.den);
        }
        let mut parts = vec![Vec::new(); q];
        for (k, &c) in n.iter().enumerate() {
            let h = &mut parts[k % q];
            h.resize(k / q + 1, 0);
            h[k / q] = c;
        }
        Some(parts.iter().map(|h| self.frac(h, &a.den)).collect())
    }

    fn encode(&self, a: &RatFn) -> Value {
        Value::from(vec![Value::from(a.num.clone()), Value::from(a.den.clone())])
    }

    fn decode(&self, v: &Value) -> Result<RatFn, FieldError> {
        let p = self.base.p();
        let bad = || FieldError::BadElement(format!("expected [[numerator], [denominator]], got {v}"));
        let parts = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
        let coeffs = |x: &Value| -> Result<Vec<u32>, FieldError> {
            x.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|c| c.as_u64().filter(|&c| c < p as u64).map(|c| c as u32).ok_or_else(bad))
                .collect()
        };
        let num = coeffs(&parts[0])?;
        let den = coeffs(&parts[1])?;
        if den.iter().all(|&c| c == 0) {
            return Err(FieldError::BadElement("zero denominator".into()));
        }
        let out = self.frac(&num, &den);
        // Canonical form is part of the wire format.
        if out.num != num || out.den != den {
            return Err(FieldError::BadElement(format!("{v} is not in canonical form")));
        }
        Ok(out)
    }

    fn fmt_elem(&self, a: &RatFn) -> String {
        fn show(c: &[u32]) -> String {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| match (i, x) {
                    (0, x) => x.to_string(),
                    (1, 1) => "t".into(),
                    (1, x) => format!("{x}t"),
                    (i, 1) => format!("t^{i}"),
                    (i, x) => format!("{x}t^{i}"),
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        }
        if a.den == [1] {
            show(&a.num)
        } else {
            format!("({})/({})", show(&a.num), show(&a.den))
        }
    }
}
