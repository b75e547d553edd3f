//! Restricted Lie algebras in characteristic `p`, their restricted
//! enveloping algebras `u(L)`, p-polynomials and p-nilpotent elements.
//!
//! `L` is given on a basis `e_0, ..., e_{n-1}` by the brackets
//! `[e_i, e_j]` and the images `e_i^[p]`. The p-map of any other element is
//! never expanded symbolically: it is read off as the associative p-th power
//! inside `u(L)`.

mod checks;
mod pbw;
mod pnil;
mod sweep;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::fields::{make_field, AnyField, Field, FieldError, FieldSpec, FiniteField, RationalFunctionField};
use crate::linalg::{self, Matrix, Subspace};

pub use checks::{corollary_evaluate, lemma_3_2_check, lemma_3_5_witness_check, Corollary};
pub use pbw::{Enveloping, PPolynomial, PbwMonomial, MAX_U_DIM};
pub use pnil::{subspace_elements, NonClosure, PSet, MAX_P_SCAN};
pub use sweep::{presentations, sweep_family, SweepFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictedError {
    #[error("bracket is not alternating at (e{i}, e{j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails on (e{i}, e{j}, e{k})")]
    JacobiFails { i: usize, j: usize, k: usize },
    #[error("ad(e{i}^[p]) differs from (ad e{i})^p")]
    NotRestricted { i: usize },
    #[error("malformed presentation: {0}")]
    BadShape(String),
    #[error("straightening produced a non-associative table: {0}")]
    StraighteningInconsistent(String),
    #[error("element is not in the image of L")]
    NotInL,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("the p-nilpotent elements do not form a subspace")]
    PNotSubspace,
    #[error("subspace is not a restricted ideal")]
    NotRestrictedIdeal,
    #[error("characteristic 0 has no restricted structure")]
    ZeroCharacteristic,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A finite-dimensional restricted Lie algebra on a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedLieAlgebra<F: Field> {
    field: F,
    dim: usize,
    /// `bracket[i][j]` = coordinates of `[e_i, e_j]`.
    bracket: Vec<Vec<Vec<F::Elem>>>,
    /// `pmap[i]` = coordinates of `e_i^[p]`.
    pmap: Vec<Vec<F::Elem>>,
}

impl<F: Field> RestrictedLieAlgebra<F> {
    /// Validates alternation, Jacobi and `ad(e_i^[p]) = (ad e_i)^p`.
    pub fn new(field: F, bracket: Vec<Vec<Vec<F::Elem>>>, pmap: Vec<Vec<F::Elem>>) -> Result<Self, RestrictedError> {
        let n = pmap.len();
        if field.characteristic() == 0 {
            return Err(RestrictedError::ZeroCharacteristic);
        }
        if pmap.iter().any(|v| v.len() != n) {
            return Err(RestrictedError::BadShape(format!("pmap must be {n} vectors of length {n}")));
        }
        if bracket.len() != n || bracket.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(RestrictedError::BadShape(format!("bracket must be {n} x {n} x {n}")));
        }
        let l = RestrictedLieAlgebra { field, dim: n, bracket, pmap };
        l.validate()?;
        Ok(l)
    }

    fn validate(&self) -> Result<(), RestrictedError> {
        let f = &self.field;
        let n = self.dim;
        for i in 0..n {
            if !linalg::is_zero_vec(f, &self.bracket[i][i]) {
                return Err(RestrictedError::NotAntisymmetric { i, j: i });
            }
            for j in i + 1..n {
                if linalg::vec_add(f, &self.bracket[i][j], &self.bracket[j][i]).iter().any(|c| !f.is_zero(c)) {
                    return Err(RestrictedError::NotAntisymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.basis_elem(i), self.basis_elem(j), self.basis_elem(k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    let sum = linalg::vec_add(f, &linalg::vec_add(f, &a, &b), &c);
                    if !linalg::is_zero_vec(f, &sum) {
                        return Err(RestrictedError::JacobiFails { i, j, k });
                    }
                }
            }
        }
        let p = f.characteristic() as usize;
        for i in 0..n {
            let ad = self.ad_matrix(&self.basis_elem(i));
            let mut power = ad.clone();
            for _ in 1..p {
                power = linalg::mat_mul(f, &power, &ad);
            }
            if self.ad_matrix(&self.pmap[i]) != power {
                return Err(RestrictedError::NotRestricted { i });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn bracket_table(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.bracket
    }

    pub fn pmap_table(&self) -> &[Vec<F::Elem>] {
        &self.pmap
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_elem(&self, i: usize) -> Vec<F::Elem> {
        linalg::unit_vector(&self.field, self.dim, i)
    }

    pub fn full_space(&self) -> Subspace<F::Elem> {
        Subspace::full(&self.field, self.dim)
    }

    pub fn span(&self, vectors: Vec<Vec<F::Elem>>) -> Subspace<F::Elem> {
        Subspace::span(&self.field, self.dim, vectors)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().flatten().all(|v| linalg::is_zero_vec(&self.field, v))
    }

    pub fn bracket(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, ui) in u.iter().enumerate() {
            if f.is_zero(ui) {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if f.is_zero(vj) {
                    continue;
                }
                linalg::axpy(f, &mut out, &f.mul(ui, vj), &self.bracket[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad u = [u, -]`, column `j` holding `[u, e_j]`.
    pub fn ad_matrix(&self, u: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim).map(|j| self.bracket(u, &self.basis_elem(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// `span{[u, v] : u in U, v in V}`.
    pub fn bracket_space(&self, u: &Subspace<F::Elem>, v: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        let mut out = Subspace::zero(self.dim);
        for a in u.basis() {
            for b in v.basis() {
                out.insert(&self.field, &self.bracket(a, b));
            }
        }
        out
    }

    /// `[L, L]` (a Lie ideal, not necessarily closed under the p-map).
    pub fn derived_subalgebra(&self) -> Subspace<F::Elem> {
        let full = self.full_space();
        self.bracket_space(&full, &full)
    }

    /// Nilpotency of `L` via `L^1 = L`, `L^{k+1} = [L^k, L]`; the class is
    /// the least `c` with `L^{c+1} = 0`.
    pub fn is_nilpotent(&self) -> (bool, Option<usize>) {
        let full = self.full_space();
        let mut term = full.clone();
        let mut c = 0;
        loop {
            if term.is_zero() {
                return (true, Some(c));
            }
            let next = self.bracket_space(&term, &full);
            if next.dim() == term.dim() {
                return (false, None);
            }
            term = next;
            c += 1;
        }
    }

    pub fn to_json(&self) -> RestrictedJson {
        let f = &self.field;
        let enc = |v: &[F::Elem]| -> Vec<Value> { v.iter().map(|c| f.encode(c)).collect() };
        RestrictedJson {
            field: f.spec(),
            dim: self.dim,
            bracket: self.bracket.iter().map(|row| row.iter().map(|v| enc(v)).collect()).collect(),
            pmap: self.pmap.iter().map(|v| enc(v)).collect(),
        }
    }

    pub fn from_json(field: F, json: &RestrictedJson) -> Result<Self, RestrictedError> {
        let dec = |v: &[Value]| -> Result<Vec<F::Elem>, RestrictedError> {
            v.iter().map(|c| field.decode(c).map_err(RestrictedError::from)).collect()
        };
        if json.pmap.len() != json.dim {
            return Err(RestrictedError::BadShape(format!("pmap has {} rows, dim is {}", json.pmap.len(), json.dim)));
        }
        let bracket = json
            .bracket
            .iter()
            .map(|row| row.iter().map(|v| dec(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let pmap = json.pmap.iter().map(|v| dec(v)).collect::<Result<Vec<_>, _>>()?;
        Self::new(field.clone(), bracket, pmap)
    }
}

/// JSON form `{"field", "dim", "bracket", "pmap"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestrictedJson {
    pub field: FieldSpec,
    pub dim: usize,
    pub bracket: Vec<Vec<Vec<Value>>>,
    pub pmap: Vec<Vec<Value>>,
}

/// A restricted Lie algebra over a field chosen at runtime.
#[derive(Debug, Clone)]
pub enum AnyRestricted {
    Finite(RestrictedLieAlgebra<FiniteField>),
    RationalFunction(RestrictedLieAlgebra<RationalFunctionField>),
}

impl AnyRestricted {
    pub fn from_json(json: &RestrictedJson) -> Result<Self, RestrictedError> {
        Ok(match make_field(&json.field)? {
            AnyField::Finite(f) => AnyRestricted::Finite(RestrictedLieAlgebra::from_json(f, json)?),
            AnyField::RationalFunction(f) => AnyRestricted::RationalFunction(RestrictedLieAlgebra::from_json(f, json)?),
        })
    }

    pub fn parse_json(text: &str) -> Result<Self, RestrictedError> {
        let json: RestrictedJson = serde_json::from_str(text)
            .map_err(|e| RestrictedError::BadShape(format!("invalid restricted Lie algebra JSON: {e}")))?;
        Self::from_json(&json)
    }

    pub fn to_json(&self) -> RestrictedJson {
        match self {
            AnyRestricted::Finite(l) => l.to_json(),
            AnyRestricted::RationalFunction(l) => l.to_json(),
        }
    }
}

/// `L = span{x, y}` over `F_2` with `[x, y] = x`, `x^[2] = 0`, `y^[2] = y`.
/// Its enveloping algebra has the Klein four group as unit group.
pub fn klein() -> RestrictedLieAlgebra<FiniteField> {
    let f = FiniteField::prime(2).unwrap();
    let bracket = vec![vec![vec![0, 0], vec![1, 0]], vec![vec![1, 0], vec![0, 0]]];
    let pmap = vec![vec![0, 0], vec![0, 1]];
    RestrictedLieAlgebra::new(f, bracket, pmap).expect("the Klein presentation is restricted")
}

/// Abelian `L = span{x, y}` over `F_p(t)` with `x^[p] = x` and
/// `y^[p] = t x`. `P(L) = 0`, yet `x^(p-1) y - y` is a nonzero nilpotent of
/// `u(L)`.
pub fn lemma32_counterexample(p: u32) -> Result<RestrictedLieAlgebra<RationalFunctionField>, RestrictedError> {
    let f = RationalFunctionField::new(p)?;
    let z = f.zero();
    let bracket = vec![vec![vec![z.clone(); 2]; 2]; 2];
    let pmap = vec![vec![f.one(), z.clone()], vec![f.t(), z]];
    RestrictedLieAlgebra::new(f, bracket, pmap)
}

#[cfg(test)]
mod tests;
