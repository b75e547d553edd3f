//! Dense exact linear algebra over any [`Field`].
//!
//! Vectors are plain `Vec<F::Elem>`. Subspaces are always kept in reduced
//! row-echelon form, so two subspaces are equal iff their stored bases are.

use thiserror::Error;

use crate::fields::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(height: usize, cols: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(height * cols.len());
        for i in 0..height {
            for c in cols {
                data.push(c[i].clone());
            }
        }
        Matrix { rows: height, cols: cols.len(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "incompatible matrix product");
    let mut out = Matrix::zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let idx = i * b.cols + j;
                out.data[idx] = f.mul_add(&out.data[idx], x, b.get(k, j));
            }
        }
    }
    out
}

pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(m.cols, v.len(), "incompatible matrix-vector product");
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| if f.is_zero(a) { acc } else { f.mul_add(&acc, a, b) })
        })
        .collect()
}

pub fn vec_add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vec_scale<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

/// `a += c * b` in place.
pub fn axpy<F: Field>(f: &F, a: &mut [F::Elem], c: &F::Elem, b: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !f.is_zero(y) {
            *x = f.mul_add(x, c, y);
        }
    }
}

pub fn is_zero_vec<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn unit_vector<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// Reduces `rows` to RREF in place, drops zero rows and returns the pivot
/// columns.
fn rref_rows<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        if !f.is_one(&inv) {
            for x in rows[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                axpy(f, row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row-echelon form and rank.
pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, usize) {
    let mut rows = m.to_rows();
    let pivots = rref_rows(f, &mut rows, m.cols);
    let rank = pivots.len();
    rows.resize(m.rows, vec![f.zero(); m.cols]);
    let data = rows.into_iter().flatten().collect();
    (Matrix { rows: m.rows, cols: m.cols, data }, rank)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut rows = m.to_rows();
    rref_rows(f, &mut rows, m.cols).len()
}

/// Some `x` with `m x = b`.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Vec<F::Elem>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let mut rows: Vec<Vec<F::Elem>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_rows(f, &mut rows, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Err(LinalgError::NoSolution);
    }
    let mut x = vec![f.zero(); m.cols];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[m.cols].clone();
    }
    Ok(x)
}

/// Null space of `m`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let mut rows = m.to_rows();
    let pivots = rref_rows(f, &mut rows, m.cols);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (row, &c) in rows.iter().zip(&pivots) {
            v[c] = f.neg(&row[free]);
        }
        basis.push(v);
    }
    Subspace::span(f, m.cols, basis)
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows;
    if n != m.cols {
        return None;
    }
    let mut rows: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(unit_vector(f, n, i));
            r
        })
        .collect();
    let pivots = rref_rows(f, &mut rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
}

/// A linear subspace of `F^ambient`, stored as an RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(f, ambient, i)).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, mut vectors: Vec<Vec<E>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length differs from ambient dimension");
        let pivots = rref_rows(f, &mut vectors, ambient);
        Subspace { ambient, basis: vectors, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after reduction by the basis; zero iff `v` lies in
    /// the subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&v[c]) {
                let factor = f.neg(&v[c]);
                axpy(f, &mut v, &factor, row);
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        v.len() == self.ambient && is_zero_vec(f, &self.reduce(f, v))
    }

    /// Coefficients of `v` with respect to the stored basis, if `v` lies in
    /// the subspace.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// Adds `v` to the subspace; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let mut r = self.reduce(f, v);
        let Some(c) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[c]).expect("nonzero entry");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.basis.iter_mut() {
            if !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                axpy(f, row, &factor, &r);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.basis.insert(pos, r);
        true
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span(f, self.ambient, vectors))
    }

    /// Zassenhaus intersection.
    pub fn intersection<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut rows: Vec<Vec<E>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            rows.push(u.iter().chain(u.iter()).cloned().collect());
        }
        for v in &other.basis {
            rows.push(v.iter().cloned().chain(std::iter::repeat(f.zero()).take(n)).collect());
        }
        let pivots = rref_rows(f, &mut rows, 2 * n);
        let meet = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, c)| c >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Ok(Self::span(f, n, meet))
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(f, v))
    }

    /// Standard basis indices not used as pivots; their unit vectors span a
    /// complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }
}

/// Detects the first linear dependence in a sequence of vectors.
///
/// Each pushed vector is reduced against the earlier ones while tracking
/// the combination that produced it, so a dependence comes back as explicit
/// coefficients.
#[derive(Debug, Clone)]
pub struct DependenceTracker<E> {
    rows: Vec<(usize, Vec<E>, Vec<E>)>,
    count: usize,
}

impl<E: Clone + PartialEq> DependenceTracker<E> {
    pub fn new() -> Self {
        DependenceTracker { rows: Vec::new(), count: 0 }
    }

    /// Number of independent vectors pushed so far.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Pushes `v_m`. If `v_m` lies in the span of `v_0, ..., v_{m-1}`,
    /// returns `c` of length `m + 1` with `c_m = 1` and `sum c_i v_i = 0`.
    pub fn push<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let m = self.count;
        let mut v = v.to_vec();
        let mut combo = vec![f.zero(); m + 1];
        combo[m] = f.one();
        for (c, row, row_combo) in &self.rows {
            if !f.is_zero(&v[*c]) {
                let factor = f.neg(&v[*c]);
                axpy(f, &mut v, &factor, row);
                axpy(f, &mut combo[..row_combo.len()], &factor, row_combo);
            }
        }
        match v.iter().position(|x| !f.is_zero(x)) {
            None => Some(combo),
            Some(c) => {
                let inv = f.inv(&v[c]).expect("nonzero entry");
                let v = vec_scale(f, &inv, &v);
                let combo = vec_scale(f, &inv, &combo);
                self.rows.push((c, v, combo));
                self.count += 1;
                None
            }
        }
    }
}

impl<E: Clone + PartialEq> Default for DependenceTracker<E> {
    fn default() -> Self {
        Self::new()
    }
}
