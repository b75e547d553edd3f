//! Exact computations with finite-dimensional associative algebras, their
//! unit groups, and restricted Lie algebras in positive characteristic.
//!
//! The modules build on each other bottom-up: [`fields`] and [`linalg`]
//! supply exact arithmetic, [`algebra`] handles structure-constant algebras,
//! [`unitgroup`] enumerates unit groups, [`liestruct`] evaluates Lie-theoretic
//! properties and theorem conditions, and [`restricted`] constructs restricted
//! enveloping algebras.

pub mod algebra;
pub mod corpus;
pub mod fields;
pub mod liestruct;
pub mod linalg;
pub mod restricted;
pub mod unitgroup;

pub use fields::{make_field, AnyField, Field, FieldError, FieldKind, FieldSpec, FiniteField, RatFn, RationalFunctionField};
pub use linalg::{LinalgError, Matrix, Subspace};
pub use algebra::{AlgElement, Algebra, AlgebraError, AnyAlgebra, RadicalMethod, RadicalReport};
pub use unitgroup::{EngelLength, GroupEngelReport, GroupWord, IdentityVerdict, UnitGroup, WordCheckMode};
pub use liestruct::{CondValue, Condition, Consistency, Limits, TheoremVerdict};
pub use restricted::{AnyRestricted, Corollary, Enveloping, PPolynomial, PSet, RestrictedError, RestrictedLieAlgebra, SweepFamily};
