//! Three-valued, certified verdicts.

use std::fmt;

use serde::Serialize;

use crate::exalg::{Matrix, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    DerivedCriterion,
    WitnessSet,
    Structural,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::DerivedCriterion => "derived_criterion",
            Method::WitnessSet => "witness_set",
            Method::Structural => "structural",
        }
    }
}

/// A machine-checkable certificate. Vectors are coordinates in the ambient
/// basis of whatever the predicate was asked about.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vector {
        v: Vec<Scalar>,
    },
    Pair {
        p: Vec<Scalar>,
        q: Vec<Scalar>,
    },
    /// A basis tuple and the nonzero defect it produces.
    Axiom {
        indices: Vec<usize>,
        defect: Vec<Scalar>,
    },
    /// A subspace, optionally with the vector it was generated from.
    Subspace {
        generator: Option<Vec<Scalar>>,
        basis: Vec<Vec<Scalar>>,
    },
    IdealPair {
        x: Vec<Scalar>,
        y: Vec<Scalar>,
        i: Vec<Vec<Scalar>>,
        j: Vec<Vec<Scalar>>,
    },
    Operator {
        matrix: Matrix,
    },
    OperatorPair {
        p: Matrix,
        q: Matrix,
    },
}

impl Witness {
    pub fn subspace(generator: Option<Vec<Scalar>>, s: &Subspace) -> Self {
        Witness::Subspace {
            generator,
            basis: s.basis_vectors(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub value: Truth,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds(method: Method) -> Self {
        Verdict {
            value: Truth::True,
            method,
            witness: None,
            note: None,
        }
    }

    pub fn fails(method: Method, witness: Witness) -> Self {
        Verdict {
            value: Truth::False,
            method,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn unknown(method: Method, note: impl Into<String>) -> Self {
        Verdict {
            value: Truth::Unknown,
            method,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_true(&self) -> bool {
        self.value == Truth::True
    }

    pub fn is_false(&self) -> bool {
        self.value == Truth::False
    }

    pub fn is_unknown(&self) -> bool {
        self.value == Truth::Unknown
    }
}
