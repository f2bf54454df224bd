//! Canonical coordinate subspaces.
//!
//! A [`Subspace`] is stored as the reduced row-echelon basis of its row space.
//! Because RREF is unique, two subspaces are equal exactly when their bases are
//! equal entrywise; `PartialEq` relies on this.

use super::field::{FieldSpec, Scalar};
use super::matrix::{rref_rows, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: (0..ambient).map(|i| field.unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .filter(|v| v.iter().any(|s| !s.is_zero()))
            .collect();
        let (rows, pivots) = rref_rows(rows, ambient);
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn span_of(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Self::from_vectors(field, ambient, vectors.iter().cloned())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The RREF basis rows.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.rows.clone()
    }

    /// Basis as a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows_with_cols(self.field, self.ambient, self.rows.clone())
            .expect("basis rows have ambient length")
    }

    /// Inclusion map `F^dim → F^ambient` (columns are basis vectors).
    pub fn embedding(&self) -> Matrix {
        Matrix::from_cols(self.field, self.ambient, &self.rows)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.describe(),
                other.field.describe(),
            ));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Remainder of `v` after elimination against the basis; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let factor = -&r[p];
            for (s, t) in r.iter_mut().zip(row) {
                if !t.is_zero() {
                    s.add_mul(&factor, t);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the RREF basis, if `v` is a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// `Σ c_i b_i` for coordinates `c` in the RREF basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut v = self.field.zeros(self.ambient);
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (s, t) in v.iter_mut().zip(row) {
                if !t.is_zero() {
                    s.add_mul(c, t);
                }
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subspace) -> Subspace {
        Subspace::from_vectors(
            self.field,
            self.ambient,
            self.rows.iter().chain(&other.rows).cloned(),
        )
    }

    /// Intersection via the kernel of the stacked bases `[Aᵀ | -Bᵀ]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        let mut m = Matrix::zeros(self.field, self.ambient, a + b);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, s) in row.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for (i, s) in row.iter().enumerate() {
                m.set(i, a + j, -s);
            }
        }
        let k = m.kernel();
        Subspace::from_vectors(
            self.field,
            self.ambient,
            k.rows.iter().map(|sol| self.combine(&sol[..a])),
        )
    }

    /// Image of the subspace under a linear map.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::from_vectors(self.field, m.rows(), self.rows.iter().map(|v| m.apply(v)))
    }

    /// Is the subspace mapped into itself by `m`?
    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.rows.iter().all(|v| self.contains(&m.apply(v)))
    }

    /// A `(ambient − dim) × ambient` matrix whose kernel is exactly this subspace:
    /// the non-pivot coordinates of the remainder after reduction.
    pub fn quotient_map(&self) -> Matrix {
        let non_pivots: Vec<usize> = (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let mut m = Matrix::zeros(self.field, non_pivots.len(), self.ambient);
        for col in 0..self.ambient {
            let r = self.reduce(&self.field.unit(self.ambient, col));
            for (i, &np) in non_pivots.iter().enumerate() {
                m.set(i, col, r[np].clone());
            }
        }
        m
    }

    /// Least subspace containing `seeds` and invariant under every map in `maps`.
    pub fn closure(
        field: FieldSpec,
        ambient: usize,
        seeds: &[Vec<Scalar>],
        maps: &[Matrix],
    ) -> Subspace {
        let mut builder = EchelonBuilder::new(field, ambient);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for s in seeds {
            if let Some(v) = builder.insert(s) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for m in maps {
                if builder.is_full() {
                    break;
                }
                if let Some(w) = builder.insert(&m.apply(&v)) {
                    queue.push(w);
                }
            }
        }
        builder.finish()
    }

    /// Flattened rows, used as a deterministic sort key.
    pub fn sort_key(&self) -> (usize, Vec<Scalar>) {
        (self.dim(), self.rows.iter().flatten().cloned().collect())
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// Incrementally maintained echelon basis.
///
/// Rows are kept fully reduced against each other so membership tests are a
/// single elimination pass.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: FieldSpec, ambient: usize) -> Self {
        EchelonBuilder {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        EchelonBuilder {
            field: s.field,
            ambient: s.ambient,
            rows: s.rows.clone(),
            pivots: s.pivots.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let factor = -&r[p];
            for (s, t) in r.iter_mut().zip(row) {
                if !t.is_zero() {
                    s.add_mul(&factor, t);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Add `v` to the span. Returns the reduced new basis vector when the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut r = self.reduce(v);
        let p = r.iter().position(|s| !s.is_zero())?;
        let inv = r[p].inv().unwrap();
        for s in r.iter_mut() {
            *s = &*s * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = -&row[p];
            for (s, t) in row.iter_mut().zip(&r) {
                if !t.is_zero() {
                    s.add_mul(&factor, t);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r.clone());
        Some(r)
    }

    pub fn finish(self) -> Subspace {
        Subspace {
            field: self.field,
            ambient: self.ambient,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn sum_and_intersect_examples() {
        let q = FieldSpec::rational();
        let e1 = Subspace::span_of(q, 3, &[v(q, &[1, 0, 0])]);
        let e2 = Subspace::span_of(q, 3, &[v(q, &[0, 1, 0])]);
        let s = e1.sum(&e2).unwrap();
        assert_eq!(
            s,
            Subspace::span_of(q, 3, &[v(q, &[1, 0, 0]), v(q, &[0, 1, 0])])
        );
        assert_eq!(s.intersect(&s).unwrap(), s);

        let a = Subspace::span_of(q, 3, &[v(q, &[1, 1, 0]), v(q, &[0, 0, 1])]);
        let b = Subspace::span_of(q, 3, &[v(q, &[0, 1, 0]), v(q, &[0, 0, 1])]);
        assert_eq!(
            a.intersect(&b).unwrap(),
            Subspace::span_of(q, 3, &[v(q, &[0, 0, 1])])
        );
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let q = FieldSpec::rational();
        let a = Subspace::full(q, 2);
        let b = Subspace::full(q, 3);
        assert!(a.sum(&b).is_err());
        assert!(a
            .intersect(&Subspace::full(FieldSpec::prime(2).unwrap(), 2))
            .is_err());
    }

    #[test]
    fn membership() {
        let q = FieldSpec::rational();
        let s = Subspace::span_of(q, 2, &[v(q, &[1, 0])]);
        assert!(s.contains(&v(q, &[0, 0])));
        assert!(s.contains(&v(q, &[1, 0])));
        assert!(!s.contains(&v(q, &[0, 1])));
        assert_eq!(s.coordinates(&v(q, &[5, 0])), Some(v(q, &[5])));
    }

    #[test]
    fn quotient_map_kernel_is_subspace() {
        let f = FieldSpec::prime(3).unwrap();
        let s = Subspace::span_of(f, 4, &[v(f, &[1, 2, 0, 1]), v(f, &[0, 1, 1, 1])]);
        assert_eq!(s.quotient_map().kernel(), s);
    }

    #[test]
    fn closure_under_shift() {
        let q = FieldSpec::rational();
        // nilpotent shift e3 -> e2 -> e1 -> 0
        let shift = Matrix::from_rows(
            q,
            vec![v(q, &[0, 1, 0]), v(q, &[0, 0, 1]), v(q, &[0, 0, 0])],
        )
        .unwrap();
        let c = Subspace::closure(q, 3, &[v(q, &[0, 1, 0])], &[shift]);
        assert_eq!(
            c,
            Subspace::span_of(q, 3, &[v(q, &[1, 0, 0]), v(q, &[0, 1, 0])])
        );
    }

    #[test]
    fn builder_matches_batch_rref() {
        let f = FieldSpec::prime(5).unwrap();
        let vs = vec![
            v(f, &[0, 2, 1]),
            v(f, &[1, 1, 1]),
            v(f, &[1, 3, 2]),
            v(f, &[0, 0, 3]),
        ];
        let mut b = EchelonBuilder::new(f, 3);
        for x in &vs {
            b.insert(x);
        }
        assert_eq!(b.finish(), Subspace::span_of(f, 3, &vs));
    }
}
