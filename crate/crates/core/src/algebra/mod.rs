//! Finite-dimensional unital associative algebras given by structure
//! constants.
//!
//! An [`Algebra`] stores the products `e_i e_j` of its basis in a sparse
//! table and the coordinates of its unit. Elements are coordinate vectors.

mod enumerate;
mod json;
mod radical;
mod structure;

use thiserror::Error;

use crate::fields::{Field, FieldError};
use crate::linalg::{self, LinalgError, Matrix};

pub use enumerate::Odometer;
pub use json::{AlgebraJson, AnyAlgebra};
pub use radical::{RadicalMethod, RadicalReport};
pub use structure::{JordanChevalley, NilpotentSpan};

/// Default bound on `|A|` for exhaustive scans of all elements.
pub const DEFAULT_MAX_CARD: u64 = 1 << 12;
/// Bound on `|A|` for unit enumeration.
pub const MAX_UNIT_SCAN: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constants are not associative: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("the given unit is not a two-sided identity")]
    NotUnital,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("subspace contains a non-nilpotent element")]
    NotNil,
    #[error("{what} exceeds the enumeration bound {bound}")]
    TooLarge { what: String, bound: u64 },
    #[error("operation not supported over this field: {0}")]
    UnsupportedField(String),
    #[error("operation requires a perfect field")]
    ImperfectField,
    #[error("malformed structure constants: {0}")]
    BadTable(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type AlgElement<E> = Vec<E>;

#[derive(Debug, Clone)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    /// `table[i * dim + j]` lists the nonzero coordinates of `e_i e_j`.
    table: Vec<Vec<(usize, F::Elem)>>,
    one: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Algebra<F>
where
    F: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table && self.one == other.one
    }
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from dense structure constants
    /// (`table[i][j]` = coordinates of `e_i e_j`), validating unit and
    /// associativity on all basis triples.
    pub fn from_constants(field: F, table: Vec<Vec<Vec<F::Elem>>>, one: Vec<F::Elem>) -> Result<Self, AlgebraError> {
        let alg = Self::from_constants_unchecked(field, table, one)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Shape checks only; associativity and unit are left unverified.
    pub(crate) fn from_constants_unchecked(
        field: F,
        table: Vec<Vec<Vec<F::Elem>>>,
        one: Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        let n = one.len();
        if n == 0 {
            return Err(AlgebraError::BadTable("dimension must be at least 1".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(AlgebraError::BadTable(format!("table must be {n} x {n} x {n}")));
        }
        let sparse = table
            .into_iter()
            .flatten()
            .map(|v| v.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect())
            .collect();
        Ok(Algebra { field, dim: n, table: sparse, one })
    }

    /// Sparse form of [`Algebra::from_constants`]: `table[i * dim + j]`
    /// lists the nonzero coordinates of `e_i e_j`.
    pub(crate) fn from_sparse(
        field: F,
        dim: usize,
        table: Vec<Vec<(usize, F::Elem)>>,
        one: Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        debug_assert_eq!(table.len(), dim * dim);
        let alg = Algebra { field, dim, table, one };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            let e = self.basis_elem(i);
            if self.mul(&self.one, &e) != e || self.mul(&e, &self.one) != e {
                return Err(AlgebraError::NotUnital);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.structure(i, j);
                for k in 0..n {
                    let lhs = self.mul_basis_right(&ij, k);
                    let rhs = self.mul_basis_left(i, &self.structure(j, k));
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// The base field viewed as a 1-dimensional algebra.
    pub fn field_algebra(field: F) -> Self {
        let one = field.one();
        Algebra { field, dim: 1, table: vec![vec![(0, one.clone())]], one: vec![one] }
    }

    /// `F[e]/(e^2)`, basis `{1, e}`.
    pub fn dual_numbers(field: F) -> Self {
        let one = field.one();
        let table = vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![(1, one.clone())], vec![]];
        let zero = field.zero();
        Algebra { field, dim: 2, table, one: vec![one, zero] }
    }

    /// `M_n(F)` on the matrix units `E_ij`, basis index `i * n + j`.
    pub fn matrix(field: F, n: usize) -> Self {
        assert!(n >= 1, "matrix size must be positive");
        let d = n * n;
        let one_e = field.one();
        let mut table = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    table[(i * n + j) * d + (j * n + l)] = vec![(i * n + l, one_e.clone())];
                }
            }
        }
        let mut one = vec![field.zero(); d];
        for i in 0..n {
            one[i * n + i] = one_e.clone();
        }
        Algebra { field, dim: d, table, one }
    }

    /// Upper-triangular `n x n` matrices on the units `E_ij` with `i <= j`,
    /// in row-major order.
    pub fn triangular(field: F, n: usize) -> Self {
        assert!(n >= 1, "matrix size must be positive");
        let pairs = triangular_pairs(n);
        let d = pairs.len();
        let pos = |i: usize, j: usize| pairs.iter().position(|&pr| pr == (i, j)).unwrap();
        let one_e = field.one();
        let mut table = vec![Vec::new(); d * d];
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if j == k {
                    table[a * d + b] = vec![(pos(i, l), one_e.clone())];
                }
            }
        }
        let mut one = vec![field.zero(); d];
        for i in 0..n {
            one[pos(i, i)] = one_e.clone();
        }
        Algebra { field, dim: d, table, one }
    }

    /// Group algebra `F[G]` from a Cayley table `cayley[g][h] = gh`.
    pub fn group_algebra(field: F, cayley: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let n = cayley.len();
        check_group(cayley)?;
        let e = (0..n).find(|&g| (0..n).all(|h| cayley[g][h] == h)).expect("checked identity");
        let one_e = field.one();
        let table = (0..n * n).map(|ij| vec![(cayley[ij / n][ij % n], one_e.clone())]).collect();
        let mut one = vec![field.zero(); n];
        one[e] = one_e;
        Ok(Algebra { field, dim: n, table, one })
    }

    /// `A (+) B` with basis `e_0..e_{m-1}, f_0..f_{n-1}`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        let d = m + n;
        let mut table = vec![Vec::new(); d * d];
        for i in 0..m {
            for j in 0..m {
                table[i * d + j] = self.table[i * m + j].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                table[(m + i) * d + (m + j)] =
                    other.table[i * n + j].iter().map(|(k, c)| (m + k, c.clone())).collect();
            }
        }
        let one = self.one.iter().chain(&other.one).cloned().collect();
        Algebra { field: self.field.clone(), dim: d, table, one }
    }

    /// Same algebra on the basis `b_j = sum_i p[i][j] e_i` (columns of `p`).
    pub fn change_basis(&self, p: &Matrix<F::Elem>) -> Result<Self, AlgebraError> {
        let f = &self.field;
        let pinv = linalg::inverse(f, p).ok_or(LinalgError::NoSolution)?;
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| p.column(j)).collect();
        let table = cols
            .iter()
            .map(|bi| cols.iter().map(|bj| linalg::mat_vec(f, &pinv, &self.mul(bi, bj))).collect())
            .collect();
        let one = linalg::mat_vec(f, &pinv, &self.one);
        Self::from_constants(f.clone(), table, one)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[F::Elem] {
        &self.one
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_elem(&self, i: usize) -> Vec<F::Elem> {
        linalg::unit_vector(&self.field, self.dim, i)
    }

    /// Nonzero coordinates of `e_i e_j`.
    pub fn table_entry(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim + j]
    }

    /// Dense coordinates of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        for (k, c) in self.table_entry(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Dense `table[i][j]` view.
    pub fn dense_table(&self) -> Vec<Vec<Vec<F::Elem>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.structure(i, j)).collect()).collect()
    }

    pub fn is_zero(&self, x: &[F::Elem]) -> bool {
        linalg::is_zero_vec(&self.field, x)
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        linalg::vec_add(&self.field, x, y)
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        linalg::vec_sub(&self.field, x, y)
    }

    pub fn neg(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().map(|c| self.field.neg(c)).collect()
    }

    pub fn scale(&self, c: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
        linalg::vec_scale(&self.field, c, x)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let entry = &self.table[i * n + j];
                if entry.is_empty() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, t) in entry {
                    out[*k] = f.mul_add(&out[*k], &c, t);
                }
            }
        }
        out
    }

    /// `e_i x`.
    pub fn mul_basis_left(&self, i: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (j, xj) in x.iter().enumerate() {
            if f.is_zero(xj) {
                continue;
            }
            for (k, t) in self.table_entry(i, j) {
                out[*k] = f.mul_add(&out[*k], xj, t);
            }
        }
        out
    }

    /// `x e_j`.
    pub fn mul_basis_right(&self, x: &[F::Elem], j: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (k, t) in self.table_entry(i, j) {
                out[*k] = f.mul_add(&out[*k], xi, t);
            }
        }
        out
    }

    /// `[x, y] = xy - yx`.
    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    pub fn pow(&self, x: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
        let mut base = x.to_vec();
        let mut acc = self.one.clone();
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

    /// Matrix of `y -> xy` (the left regular representation).
    pub fn regular_rep(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul_basis_right(x, j)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `y -> yx`.
    pub fn right_rep(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<_> = (0..self.dim).map(|i| self.mul_basis_left(i, x)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.sub(&self.mul_basis_right(x, j), &self.mul_basis_left(j, x)))
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn is_unit(&self, x: &[F::Elem]) -> bool {
        linalg::rank(&self.field, &self.regular_rep(x)) == self.dim
    }

    /// Two-sided inverse, obtained by solving `x y = 1`.
    pub fn invert(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
        linalg::solve(&self.field, &self.regular_rep(x), &self.one).map_err(|_| AlgebraError::NotAUnit)
    }

    /// Whether every pair of basis elements commutes.
    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.table_entry(i, j) == self.table_entry(j, i)))
    }

    /// `|A|`, or `None` if the field is infinite or the count overflows.
    pub fn cardinality(&self) -> Option<u64> {
        let q = self.field.order()?;
        q.checked_pow(u32::try_from(self.dim).ok()?)
    }

    /// `|A|` when it is at most `bound`.
    pub fn check_card(&self, bound: u64, what: &str) -> Result<u64, AlgebraError> {
        match self.cardinality() {
            Some(c) if c <= bound => Ok(c),
            _ => Err(AlgebraError::TooLarge { what: what.to_string(), bound }),
        }
    }

    pub fn fmt_elem(&self, x: &[F::Elem]) -> String {
        let parts: Vec<String> = x.iter().map(|c| self.field.fmt_elem(c)).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Basis pairs `(i, j)` with `i <= j`, row-major.
pub fn triangular_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn check_group(cayley: &[Vec<usize>]) -> Result<(), AlgebraError> {
    let n = cayley.len();
    if n == 0 || cayley.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(AlgebraError::NotAGroup("table is not a square table on 0..n".into()));
    }
    let e = (0..n)
        .find(|&g| (0..n).all(|h| cayley[g][h] == h && cayley[h][g] == h))
        .ok_or_else(|| AlgebraError::NotAGroup("no identity element".into()))?;
    for g in 0..n {
        if !(0..n).any(|h| cayley[g][h] == e && cayley[h][g] == e) {
            return Err(AlgebraError::NotAGroup(format!("element {g} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                    return Err(AlgebraError::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
    }
    Ok(())
}

/// Cayley table of the cyclic group of order `n`.
pub fn cyclic_group(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Cayley table of a direct product.
pub fn group_product(g: &[Vec<usize>], h: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (m, n) = (g.len(), h.len());
    (0..m * n)
        .map(|x| (0..m * n).map(|y| g[x / n][y / n] * n + h[x % n][y % n]).collect())
        .collect()
}

/// Dihedral group of order `2n`: element `r^a s^b` has index `2a + b`.
pub fn dihedral_group(n: usize) -> Vec<Vec<usize>> {
    let mul = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
        let rc = if b == 0 { c } else { (n - c) % n };
        ((a + rc) % n, (b + d) % 2)
    };
    let elems: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..2).map(move |b| (a, b))).collect();
    elems
        .iter()
        .map(|&x| {
            elems
                .iter()
                .map(|&y| {
                    let (a, b) = mul(x, y);
                    2 * a + b
                })
                .collect()
        })
        .collect()
}

/// Quaternion group `Q_8` as `{+-1, +-i, +-j, +-k}`, index `2u + s` with
/// `u` in `1, i, j, k` and `s` the sign bit.
pub fn quaternion_group() -> Vec<Vec<usize>> {
    // unit products: (unit, sign) of u * v for u, v in {1, i, j, k}
    let prod = |u: usize, v: usize| -> (usize, usize) {
        match (u, v) {
            (0, v) => (v, 0),
            (u, 0) => (u, 0),
            (u, v) if u == v => (0, 1),
            (1, 2) => (3, 0),
            (2, 3) => (1, 0),
            (3, 1) => (2, 0),
            (2, 1) => (3, 1),
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (w, s) = prod(x / 2, y / 2);
                    2 * w + ((x % 2 + y % 2 + s) % 2)
                })
                .collect()
        })
        .collect()
}
