//! Algebras of quotients of finite-dimensional Hom-Lie algebras, computed
//! exactly over ℚ and GF(p).

pub mod config;
pub mod corpus;
pub mod envelope;
pub mod error;
pub mod exalg;
pub mod harness;
pub mod homlie;
pub mod maxq;
pub mod props;
pub mod quotients;
pub mod verdict;

pub use config::{Limits, Mode};
pub use error::{Error, Result};
