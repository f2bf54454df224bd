//! Hom-Lie algebras given by structure constants.
//!
//! The bracket is stored as a dense tensor: `table[i*n + j]` is the coordinate
//! vector of `[e_i, e_j]`. The twist `α` acts on column vectors.

mod axioms;
mod json;

use std::sync::{Arc, OnceLock};

pub use axioms::AxiomReport;
pub(crate) use json::{parse_vector as json_vector, strings as json_strings};
pub use json::{AlgebraJson, BracketEntry, FieldJson};

use crate::error::{Error, Result};
use crate::exalg::{FieldSpec, Matrix, Scalar, Subspace};
use crate::props::{IdealLattice, PrincipalTable};
use crate::verdict::{Method, Verdict, Witness};

/// Lazily computed data that depends only on the structure constants.
#[derive(Clone, Debug, Default)]
pub(crate) struct AlgebraCache {
    right: OnceLock<Arc<Vec<Matrix>>>,
    pub(crate) principal: OnceLock<Arc<PrincipalTable>>,
    pub(crate) lattice: OnceLock<Arc<IdealLattice>>,
}

#[derive(Clone, Debug)]
pub struct HomLieAlgebra {
    field: FieldSpec,
    dim: usize,
    table: Vec<Vec<Scalar>>,
    alpha: Matrix,
    verified: bool,
    pub(crate) cache: AlgebraCache,
}

impl PartialEq for HomLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.table == other.table
            && self.alpha == other.alpha
    }
}

impl Eq for HomLieAlgebra {}

/// A bracket entry `[e_i, e_j] = value`.
pub type StructureEntry = (usize, usize, Vec<Scalar>);

impl HomLieAlgebra {
    /// Build from upper-triangular bracket entries and a twist matrix.
    ///
    /// Entries with `i > j` are accepted as long as they agree with the
    /// antisymmetric completion; a nonzero diagonal entry or a contradicting
    /// pair is an error. No Hom-Lie axioms are checked here.
    pub fn from_structure(
        field: FieldSpec,
        dim: usize,
        entries: &[StructureEntry],
        alpha: Matrix,
    ) -> Result<Self> {
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "alpha is {}x{}, expected {dim}x{dim}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        if alpha.field() != field {
            return Err(Error::FieldMismatch(
                field.describe(),
                alpha.field().describe(),
            ));
        }
        let mut table = vec![field.zeros(dim); dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, value) in entries {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::IndexOutOfRange(format!(
                    "bracket entry ({i},{j}) in dim {dim}"
                )));
            }
            if value.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "bracket entry ({i},{j}) has {} coordinates, expected {dim}",
                    value.len()
                )));
            }
            if value.iter().any(|s| s.field() != field) {
                return Err(Error::FieldMismatch(
                    field.describe(),
                    "bracket entry".into(),
                ));
            }
            if i == j {
                if value.iter().any(|s| !s.is_zero()) {
                    return Err(Error::Parse(format!(
                        "nonzero diagonal bracket [e{i}, e{i}]"
                    )));
                }
                continue;
            }
            let neg: Vec<Scalar> = value.iter().map(|s| -s).collect();
            for (slot, v) in [(i * dim + j, value.clone()), (j * dim + i, neg)] {
                if seen[slot] && table[slot] != v {
                    return Err(Error::Parse(format!(
                        "contradictory entries for [e{i}, e{j}]"
                    )));
                }
                seen[slot] = true;
                table[slot] = v;
            }
        }
        Ok(HomLieAlgebra {
            field,
            dim,
            table,
            alpha,
            verified: false,
            cache: AlgebraCache::default(),
        })
    }

    /// Build from a full table without validation beyond shape. Used for
    /// algebras produced by construction (sums, restrictions, carriers).
    pub(crate) fn from_table(
        field: FieldSpec,
        dim: usize,
        table: Vec<Vec<Scalar>>,
        alpha: Matrix,
    ) -> Self {
        debug_assert_eq!(table.len(), dim * dim);
        HomLieAlgebra {
            field,
            dim,
            table,
            alpha,
            verified: false,
            cache: AlgebraCache::default(),
        }
    }

    /// The same bracket with another twist; verification is reset.
    pub(crate) fn with_alpha(self, alpha: Matrix) -> Self {
        HomLieAlgebra::from_table(self.field, self.dim, self.table, alpha)
    }

    /// Check the axioms and mark the algebra verified, or report the first
    /// failing axiom.
    pub fn verify(mut self) -> Result<Self> {
        let report = self.check_axioms();
        for (name, v) in [
            ("alternating", &report.alternating),
            ("hom-jacobi", &report.hom_jacobi),
            ("multiplicative", &report.multiplicative),
        ] {
            if !v.is_true() {
                let detail = serde_json::to_string(&v.witness).unwrap_or_default();
                return Err(Error::NotVerified(format!("{name} fails: {detail}")));
            }
        }
        self.verified = true;
        Ok(self)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn ensure_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::NotVerified("call verify() first".into()))
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        self.field.unit(self.dim, i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        self.field.zeros(self.dim)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    /// Bilinear expansion of `[x, y]`.
    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = &self.table[i * self.dim + j];
                let coef = xi * yj;
                for (o, t) in out.iter_mut().zip(c) {
                    if !t.is_zero() {
                        o.add_mul(&coef, t);
                    }
                }
            }
        }
        out
    }

    pub fn twist_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.alpha.apply(x)
    }

    /// Matrix of `y ↦ [w, y]`.
    pub fn left_mult(&self, w: &[Scalar]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.bracket_vec(w, &self.unit(j))).collect();
        Matrix::from_cols(self.field, n, &cols)
    }

    /// Matrix of `y ↦ [y, w]`.
    pub fn right_mult(&self, w: &[Scalar]) -> Matrix {
        self.left_mult(w).neg()
    }

    /// Right multiplications by the basis vectors, `y ↦ [y, e_j]`.
    pub fn right_mults(&self) -> Arc<Vec<Matrix>> {
        self.cache
            .right
            .get_or_init(|| {
                Arc::new(
                    (0..self.dim)
                        .map(|j| self.right_mult(&self.unit(j)))
                        .collect(),
                )
            })
            .clone()
    }

    /// Inner derivation `ad_x : y ↦ [α(x), y]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix> {
        self.ensure_verified()?;
        Ok(self.ad_unchecked(x))
    }

    pub(crate) fn ad_unchecked(&self, x: &[Scalar]) -> Matrix {
        self.left_mult(&self.twist_vec(x))
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element<'_>> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra has dim {}",
                coords.len(),
                self.dim
            )));
        }
        if coords.iter().any(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                "element".into(),
            ));
        }
        Ok(Element {
            parent: self,
            coords,
        })
    }

    pub fn basis_element(&self, i: usize) -> Element<'_> {
        Element {
            parent: self,
            coords: self.unit(i),
        }
    }

    pub fn is_hom_subalgebra(&self, s: &Subspace) -> Result<Verdict> {
        self.ensure_verified()?;
        self.check_ambient(s)?;
        Ok(self.subalgebra_verdict(s))
    }

    pub(crate) fn subalgebra_verdict(&self, s: &Subspace) -> Verdict {
        for b in s.basis() {
            if !s.contains(&self.twist_vec(b)) {
                return Verdict::fails(Method::Structural, Witness::Vector { v: b.clone() });
            }
        }
        for (a, x) in s.basis().iter().enumerate() {
            for y in &s.basis()[a + 1..] {
                if !s.contains(&self.bracket_vec(x, y)) {
                    return Verdict::fails(
                        Method::Structural,
                        Witness::Pair {
                            p: x.clone(),
                            q: y.clone(),
                        },
                    );
                }
            }
        }
        Verdict::holds(Method::Structural)
    }

    /// `α(I) ⊆ I` and `[I, L] ⊆ I`, tested on basis pairs. A failure carries
    /// either a vector whose twist leaves `I`, or a pair `(b, e_j)`.
    pub fn is_hom_ideal(&self, i: &Subspace) -> Result<Verdict> {
        self.ensure_verified()?;
        self.check_ambient(i)?;
        Ok(self.ideal_verdict(i))
    }

    pub(crate) fn ideal_verdict(&self, s: &Subspace) -> Verdict {
        for b in s.basis() {
            if !s.contains(&self.twist_vec(b)) {
                return Verdict::fails(Method::Structural, Witness::Vector { v: b.clone() });
            }
        }
        for b in s.basis() {
            for j in 0..self.dim {
                let e = self.unit(j);
                if !s.contains(&self.bracket_vec(b, &e)) {
                    return Verdict::fails(
                        Method::Structural,
                        Witness::Pair { p: b.clone(), q: e },
                    );
                }
            }
        }
        Verdict::holds(Method::Structural)
    }

    pub(crate) fn is_ideal(&self, s: &Subspace) -> bool {
        self.ideal_verdict(s).is_true()
    }

    /// Least Hom-ideal containing `seeds`.
    pub fn ideal_generated(&self, seeds: &[Vec<Scalar>]) -> Result<Subspace> {
        self.ensure_verified()?;
        for s in seeds {
            if s.len() != self.dim {
                return Err(Error::DimensionMismatch("seed length".into()));
            }
        }
        Ok(self.ideal_closure(seeds))
    }

    pub(crate) fn ideal_closure(&self, seeds: &[Vec<Scalar>]) -> Subspace {
        let mut maps = vec![self.alpha.clone()];
        maps.extend(self.right_mults().iter().cloned());
        Subspace::closure(self.field, self.dim, seeds, &maps)
    }

    /// `Ann_L(H) = {x : [x, α(y)] = 0 for all y ∈ H}`.
    pub fn annihilator(&self, h: &Subspace) -> Result<Subspace> {
        self.ensure_verified()?;
        self.check_ambient(h)?;
        Ok(self.annihilator_unchecked(h))
    }

    pub(crate) fn annihilator_unchecked(&self, h: &Subspace) -> Subspace {
        let parts: Vec<Matrix> = h
            .basis()
            .iter()
            .map(|b| self.left_mult(&self.twist_vec(b)))
            .collect();
        if parts.is_empty() {
            return self.full_space();
        }
        Matrix::vstack(self.field, self.dim, &parts).kernel()
    }

    /// Span of `[x, α(y)]` over `x ∈ a`, `y ∈ b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let twisted: Vec<Vec<Scalar>> = b.basis().iter().map(|y| self.twist_vec(y)).collect();
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in &twisted {
                vs.push(self.bracket_vec(x, y));
            }
        }
        Subspace::from_vectors(self.field, self.dim, vs)
    }

    /// Image `α(S)`.
    pub fn twist_space(&self, s: &Subspace) -> Subspace {
        s.image_under(&self.alpha)
    }

    pub fn direct_sum(&self, other: &HomLieAlgebra) -> Result<HomLieAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                other.field.describe(),
            ));
        }
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let f = self.field;
        let mut table = vec![f.zeros(n); n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                let mut v = f.zeros(n);
                v[..n1].clone_from_slice(self.structure(i, j));
                table[i * n + j] = v;
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                let mut v = f.zeros(n);
                v[n1..].clone_from_slice(other.structure(i, j));
                table[(n1 + i) * n + n1 + j] = v;
            }
        }
        let mut alpha = Matrix::zeros(f, n, n);
        for r in 0..n1 {
            for c in 0..n1 {
                alpha.set(r, c, self.alpha.get(r, c).clone());
            }
        }
        for r in 0..n2 {
            for c in 0..n2 {
                alpha.set(n1 + r, n1 + c, other.alpha.get(r, c).clone());
            }
        }
        let mut out = HomLieAlgebra::from_table(f, n, table, alpha);
        out.verified = self.verified && other.verified;
        Ok(out)
    }

    /// The algebra structure on a Hom-subalgebra `S`, in the coordinates of
    /// its RREF basis, together with the inclusion matrix (columns are the
    /// basis vectors).
    pub fn induced_on(&self, s: &Subspace) -> Result<(HomLieAlgebra, Matrix)> {
        self.ensure_verified()?;
        self.check_ambient(s)?;
        let v = self.subalgebra_verdict(s);
        if !v.is_true() {
            let detail = serde_json::to_string(&v.witness).unwrap_or_default();
            return Err(Error::NotASubalgebra(detail));
        }
        Ok(self.induced_unchecked(s))
    }

    pub(crate) fn induced_unchecked(&self, s: &Subspace) -> (HomLieAlgebra, Matrix) {
        let d = s.dim();
        let f = self.field;
        let basis = s.basis();
        let coords = |v: &[Scalar]| s.coordinates(v).expect("closed under the operation");
        let mut table = vec![f.zeros(d); d * d];
        for a in 0..d {
            for b in 0..d {
                if a != b {
                    table[a * d + b] = coords(&self.bracket_vec(&basis[a], &basis[b]));
                }
            }
        }
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| coords(&self.twist_vec(b))).collect();
        let alpha = Matrix::from_cols(f, d, &cols);
        let mut out = HomLieAlgebra::from_table(f, d, table, alpha);
        out.verified = self.verified;
        (out, s.embedding())
    }

    pub(crate) fn check_ambient(&self, s: &Subspace) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                s.field().describe(),
            ));
        }
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F^{} in an algebra of dim {}",
                s.ambient_dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Apply an invertible change of basis: the new basis vectors are the
    /// columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<HomLieAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n || p.rank() != n {
            return Err(Error::DimensionMismatch(
                "change of basis must be invertible".into(),
            ));
        }
        let p_inv = p.inverse().expect("invertible");
        let cols = p.col_vecs();
        let mut table = vec![self.field.zeros(n); n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    table[i * n + j] = p_inv.apply(&self.bracket_vec(&cols[i], &cols[j]));
                }
            }
        }
        let alpha = p_inv.mul(&self.alpha).mul(p);
        let mut out = HomLieAlgebra::from_table(self.field, n, table, alpha);
        out.verified = self.verified;
        Ok(out)
    }
}

/// An element bound to its algebra.
#[derive(Clone, Debug)]
pub struct Element<'a> {
    parent: &'a HomLieAlgebra,
    coords: Vec<Scalar>,
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.coords == other.coords
    }
}

impl<'a> Element<'a> {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    fn same_parent(&self, other: &Element<'_>) -> Result<()> {
        if std::ptr::eq(self.parent, other.parent) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(
                "elements of different algebras".into(),
            ))
        }
    }

    pub fn bracket(&self, other: &Element<'a>) -> Result<Element<'a>> {
        self.same_parent(other)?;
        Ok(Element {
            parent: self.parent,
            coords: self.parent.bracket_vec(&self.coords, &other.coords),
        })
    }

    pub fn twist(&self) -> Element<'a> {
        Element {
            parent: self.parent,
            coords: self.parent.twist_vec(&self.coords),
        }
    }

    pub fn ad(&self) -> Result<Matrix> {
        self.parent.ad(&self.coords)
    }
}
