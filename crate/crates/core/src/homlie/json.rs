//! The algebra file format. Scalars are strings so rationals stay exact.

use serde::{Deserialize, Serialize};

use super::{HomLieAlgebra, StructureEntry};
use crate::error::{Error, Result};
use crate::exalg::{FieldSpec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldJson {
    pub fn from_field(f: FieldSpec) -> Self {
        match f.modulus() {
            None => FieldJson {
                kind: "rational".into(),
                p: None,
            },
            Some(p) => FieldJson {
                kind: "prime".into(),
                p: Some(p as u64),
            },
        }
    }

    pub fn to_field(&self) -> Result<FieldSpec> {
        match (self.kind.as_str(), self.p) {
            ("rational", None) => Ok(FieldSpec::rational()),
            ("prime", Some(p)) => FieldSpec::prime(p),
            (kind, p) => Err(Error::InvalidField(format!("kind {kind:?} with p = {p:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub field: FieldJson,
    pub dim: usize,
    pub bracket: Vec<BracketEntry>,
    pub alpha: Vec<Vec<String>>,
}

pub(crate) fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

pub(crate) fn parse_vector(f: FieldSpec, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| f.parse(s)).collect()
}

pub(crate) fn parse_rows(f: FieldSpec, cols: usize, rows: &[Vec<String>]) -> Result<Matrix> {
    let rows = rows
        .iter()
        .map(|r| parse_vector(f, r))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows_with_cols(f, cols, rows)
}

impl AlgebraJson {
    /// Canonical form: only `i < j` entries with a nonzero value, in order.
    pub fn from_algebra(l: &HomLieAlgebra) -> Self {
        let n = l.dim();
        let mut bracket = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = l.structure(i, j);
                if v.iter().any(|s| !s.is_zero()) {
                    bracket.push(BracketEntry {
                        i,
                        j,
                        value: strings(v),
                    });
                }
            }
        }
        AlgebraJson {
            field: FieldJson::from_field(l.field()),
            dim: n,
            bracket,
            alpha: l.alpha().row_vecs().iter().map(|r| strings(r)).collect(),
        }
    }

    /// Parse into an (unverified) algebra.
    pub fn to_algebra(&self) -> Result<HomLieAlgebra> {
        let f = self.field.to_field()?;
        let n = self.dim;
        if self.alpha.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "alpha has {} rows, expected {n}",
                self.alpha.len()
            )));
        }
        let alpha = parse_rows(f, n, &self.alpha)?;
        let entries = self
            .bracket
            .iter()
            .map(|e| Ok((e.i, e.j, parse_vector(f, &e.value)?)))
            .collect::<Result<Vec<StructureEntry>>>()?;
        HomLieAlgebra::from_structure(f, n, &entries, alpha)
    }
}

impl HomLieAlgebra {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: AlgebraJson = serde_json::from_str(s)?;
        j.to_algebra()
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson::from_algebra(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}
