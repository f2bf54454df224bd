//! Resource limits and decision modes shared by every predicate.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// How a predicate should reach its verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Enumerate every projective point. Finite fields only.
    Exhaustive,
    /// Use a structural criterion (trace forms, the uniform denominator).
    Derived,
    /// Only try to refute with basis or supplied vectors.
    Witness,
    /// Exhaustive over finite fields, derived over ℚ.
    #[default]
    Auto,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Derived => "derived",
            Mode::Witness => "witness",
            Mode::Auto => "auto",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "derived" => Ok(Mode::Derived),
            "witness" => Ok(Mode::Witness),
            "auto" => Ok(Mode::Auto),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of projective points a single scan may visit.
    pub max_enum: u64,
    /// Largest ideal lattice that will be materialized.
    pub max_lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: 100_000,
            max_lattice: 4096,
        }
    }
}
