//! Exact linear algebra over ℚ and GF(p).
//!
//! Linear maps use the column-vector convention: `(M·v)_r = Σ_c M[r][c]·v_c`.

pub mod field;
pub mod matrix;
pub mod projective;
pub mod subspace;

pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use projective::{
    least_point, normalize, scan_first, ProjectiveSpace, ScanOrder, SubspacePoints,
};
pub use subspace::{EchelonBuilder, Subspace};
