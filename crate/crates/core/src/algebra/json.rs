//! JSON form `{"field", "dim", "table", "one"}` of an algebra.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Algebra, AlgebraError};
use crate::fields::{make_field, AnyField, Field, FieldSpec, FiniteField, RationalFunctionField};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldSpec,
    pub dim: usize,
    pub table: Vec<Vec<Vec<Value>>>,
    pub one: Vec<Value>,
}

impl<F: Field> Algebra<F> {
    pub fn to_json(&self) -> AlgebraJson {
        let f = &self.field;
        let enc = |v: &[F::Elem]| -> Vec<Value> { v.iter().map(|c| f.encode(c)).collect() };
        AlgebraJson {
            field: f.spec(),
            dim: self.dim,
            table: (0..self.dim).map(|i| (0..self.dim).map(|j| enc(&self.structure(i, j))).collect()).collect(),
            one: enc(&self.one),
        }
    }

    /// Decodes `json` over an already constructed field.
    pub fn from_json(field: F, json: &AlgebraJson) -> Result<Self, AlgebraError> {
        let dec = |v: &[Value]| -> Result<Vec<F::Elem>, AlgebraError> {
            v.iter().map(|c| field.decode(c).map_err(AlgebraError::from)).collect()
        };
        if json.one.len() != json.dim {
            return Err(AlgebraError::BadTable(format!("unit has {} coordinates, dim is {}", json.one.len(), json.dim)));
        }
        let table = json
            .table
            .iter()
            .map(|row| row.iter().map(|v| dec(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let one = dec(&json.one)?;
        Algebra::from_constants(field.clone(), table, one)
    }
}

/// An algebra over a field chosen at runtime.
#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Finite(Algebra<FiniteField>),
    RationalFunction(Algebra<RationalFunctionField>),
}

impl AnyAlgebra {
    pub fn from_json(json: &AlgebraJson) -> Result<Self, AlgebraError> {
        Ok(match make_field(&json.field)? {
            AnyField::Finite(f) => AnyAlgebra::Finite(Algebra::from_json(f, json)?),
            AnyField::RationalFunction(f) => AnyAlgebra::RationalFunction(Algebra::from_json(f, json)?),
        })
    }

    pub fn parse_json(text: &str) -> Result<Self, AlgebraError> {
        let json: AlgebraJson =
            serde_json::from_str(text).map_err(|e| AlgebraError::BadTable(format!("invalid algebra JSON: {e}")))?;
        Self::from_json(&json)
    }

    pub fn to_json(&self) -> AlgebraJson {
        match self {
            AnyAlgebra::Finite(a) => a.to_json(),
            AnyAlgebra::RationalFunction(a) => a.to_json(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("algebra JSON serializes")
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Finite(a) => a.dim(),
            AnyAlgebra::RationalFunction(a) => a.dim(),
        }
    }
}
