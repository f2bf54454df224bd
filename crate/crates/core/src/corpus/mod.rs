//! Seeded construction of Hom-Lie algebras and extensions that satisfy the
//! axioms by construction, plus a curated set of named instances.

mod curated;
mod lie;
mod store;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use curated::{
    abelian, borel_in_sl2, curated, ex2_5, heisenberg, sl2, sl2_sum, Curated, Expected,
};
pub use lie::{base_lie_algebra, centroid};
pub use store::{
    generated_algebra_entries, generated_entries, load_corpus, shipped_corpus, write_corpus,
    CorpusEntry, Instance, Manifest, ManifestEntry,
};

use crate::error::{Error, Result};
use crate::exalg::{FieldSpec, Matrix, Scalar, Subspace};
use crate::homlie::HomLieAlgebra;
use crate::quotients::Extension;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    LieWithIdentityTwist,
    LieWithScalarTwist,
    LieWithCentroidTwist,
    CentralDegenerate,
    RejectionSampled,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::LieWithIdentityTwist,
        Strategy::LieWithScalarTwist,
        Strategy::LieWithCentroidTwist,
        Strategy::CentralDegenerate,
        Strategy::RejectionSampled,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::LieWithIdentityTwist => "lie-with-identity-twist",
            Strategy::LieWithScalarTwist => "lie-with-scalar-twist",
            Strategy::LieWithCentroidTwist => "lie-with-centroid-twist",
            Strategy::CentralDegenerate => "central-degenerate",
            Strategy::RejectionSampled => "rejection-sampled",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown strategy {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub strategy: Strategy,
    pub field: FieldSpec,
    pub dim: usize,
    pub seed: u64,
    pub count: usize,
}

/// Tries per instance before rejection sampling gives up.
pub const REJECTION_BUDGET: usize = 20_000;

pub(crate) fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index as u64);
    r
}

pub(crate) fn random_scalar(f: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match f.modulus() {
        Some(p) => f.element(rng.gen_range(0..p)),
        None => f.from_i64(rng.gen_range(-2..=2)),
    }
}

pub(crate) fn random_vector(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(f, rng)).collect()
}

pub(crate) fn random_matrix(f: FieldSpec, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_flat(f, r, c, random_vector(f, r * c, rng))
}

pub(crate) fn random_invertible(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(f, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

fn check_spec(spec: &GeneratorSpec) -> Result<()> {
    if spec.dim == 0 {
        return Err(Error::PreconditionFailed(
            "dimension must be positive".into(),
        ));
    }
    if spec.strategy == Strategy::RejectionSampled
        && (spec.field.modulus() != Some(2) || spec.dim > 3)
    {
        return Err(Error::PreconditionFailed(
            "rejection sampling is limited to dimension at most 3 over GF(2)".into(),
        ));
    }
    Ok(())
}

/// `count` verified algebras, a pure function of the spec. Instance `k` uses
/// its own random stream, so parallel generation keeps the order.
pub fn generate(spec: &GeneratorSpec) -> Result<Vec<HomLieAlgebra>> {
    check_spec(spec)?;
    (0..spec.count)
        .into_par_iter()
        .map(|k| generate_one(spec, &mut rng_for(spec.seed, k)))
        .collect()
}

pub(crate) fn generate_one(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<HomLieAlgebra> {
    let (f, n) = (spec.field, spec.dim);
    let raw = match spec.strategy {
        Strategy::LieWithIdentityTwist => {
            lie::sample_lie(f, n, rng).with_alpha(Matrix::identity(f, n))
        }
        Strategy::LieWithScalarTwist => {
            let lambda = random_scalar(f, rng);
            lie::sample_lie(f, n, rng).with_alpha(Matrix::scalar(f, n, &lambda))
        }
        Strategy::LieWithCentroidTwist => {
            let base = lie::sample_lie(f, n, rng);
            let cent = centroid(&base);
            let mut gamma = Matrix::zeros(f, n, n);
            for g in &cent {
                gamma = gamma.add(&g.scale(&random_scalar(f, rng)));
            }
            base.with_alpha(gamma)
        }
        Strategy::CentralDegenerate => central_degenerate(f, n, rng),
        Strategy::RejectionSampled => return rejection_sample(f, n, rng),
    };
    raw.verify().map_err(|e| {
        Error::StructureViolation(format!(
            "{} produced an invalid algebra: {e}",
            spec.strategy
        ))
    })
}

/// Alternating bracket on a non-central part, with `α` landing in the central
/// span and killing `[L, L]`, so every Hom-Jacobi term vanishes.
fn central_degenerate(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> HomLieAlgebra {
    let k = if n == 1 { 1 } else { rng.gen_range(1..n) };
    let mut table = vec![f.zeros(n); n * n];
    for i in k..n {
        for j in i + 1..n {
            if rng.gen_bool(0.6) {
                let v = random_vector(f, n, rng);
                table[j * n + i] = v.iter().map(|s| -s).collect();
                table[i * n + j] = v;
            }
        }
    }
    let derived = Subspace::from_vectors(f, n, table.iter().cloned());
    let quot = derived.quotient_map();
    let mut c = random_matrix(f, n, quot.rows(), rng);
    for r in k..n {
        for col in 0..quot.rows() {
            c.set(r, col, f.zero());
        }
    }
    let alpha = c.mul(&quot);
    HomLieAlgebra::from_table(f, n, table, alpha)
}

fn rejection_sample(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<HomLieAlgebra> {
    for _ in 0..REJECTION_BUDGET {
        let mut table = vec![f.zeros(n); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = random_vector(f, n, rng);
                table[j * n + i] = v.iter().map(|s| -s).collect();
                table[i * n + j] = v;
            }
        }
        let alpha = random_matrix(f, n, n, rng);
        if let Ok(l) = HomLieAlgebra::from_table(f, n, table, alpha).verify() {
            return Ok(l);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no Hom-Lie algebra after {REJECTION_BUDGET} samples"
    )))
}

/// The Hom-subalgebra generated by `seeds`: closure under brackets and `α`.
pub fn subalgebra_generated(l: &HomLieAlgebra, seeds: &[Vec<Scalar>]) -> Subspace {
    let mut cur = Subspace::span_of(l.field(), l.dim(), seeds);
    loop {
        let mut vecs: Vec<Vec<Scalar>> = cur.basis().to_vec();
        for x in cur.basis() {
            vecs.push(l.twist_vec(x));
            for y in cur.basis() {
                vecs.push(l.bracket_vec(x, y));
            }
        }
        let next = Subspace::from_vectors(l.field(), l.dim(), vecs);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// A random Hom-subalgebra of a verified algebra: sometimes `L = Q`, sometimes
/// generated by a few random vectors.
pub fn random_extension(q: HomLieAlgebra, rng: &mut ChaCha8Rng) -> Result<Extension> {
    let (f, n) = (q.field(), q.dim());
    let sub = match rng.gen_range(0..6) {
        0 => q.full_space(),
        _ => {
            let seeds: Vec<Vec<Scalar>> = (0..rng.gen_range(1..=n))
                .map(|_| random_vector(f, n, rng))
                .collect();
            subalgebra_generated(&q, &seeds)
        }
    };
    let basis = sub.basis().to_vec();
    Extension::new(q, &basis)
}

/// `count` extensions whose ambient algebras come from `spec`.
pub fn generate_extensions(spec: &GeneratorSpec) -> Result<Vec<Extension>> {
    check_spec(spec)?;
    (0..spec.count)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(spec.seed, k);
            let q = generate_one(spec, &mut rng)?;
            random_extension(q, &mut rng)
        })
        .collect()
}

/// Specs behind the shipped generated corpus: both small fields, every
/// strategy, ambient dimension 2 to 4.
pub fn shipped_specs() -> Vec<(GeneratorSpec, &'static str)> {
    let mut out = Vec::new();
    for (p, fname) in [(2u64, "gf2"), (3, "gf3")] {
        let f = FieldSpec::prime(p).expect("prime");
        for strategy in Strategy::ALL {
            for dim in 2..=4 {
                if strategy == Strategy::RejectionSampled && (p != 2 || dim > 3) {
                    continue;
                }
                let count = if strategy == Strategy::RejectionSampled {
                    6
                } else {
                    9
                };
                out.push((
                    GeneratorSpec {
                        strategy,
                        field: f,
                        dim,
                        seed: 1000 + dim as u64,
                        count,
                    },
                    fname,
                ));
            }
        }
    }
    out
}
