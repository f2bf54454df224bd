//! Dense matrices over a [`FieldSpec`].
//!
//! Linear maps act on column vectors from the left: `(M v)_r = Σ_c M[r][c] v_c`.
//! Shape mismatches in arithmetic are programming errors and panic; fallible
//! construction from external data returns `Result`.

use std::fmt;

use super::field::{FieldSpec, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: FieldSpec, n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, cols, rows)
    }

    /// Like [`Matrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(
        field: FieldSpec,
        cols: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            if let Some(bad) = r.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch(
                    bad.field().describe(),
                    field.describe(),
                ));
            }
            data.extend(r);
        }
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for (r, s) in v.iter().enumerate() {
                m.data[r * m.cols + c] = s.clone();
            }
        }
        m
    }

    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data length mismatch");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        self.data[r * self.cols + c] = s;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    /// Row-major entries.
    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = self.field.zeros(self.rows);
        for (r, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(r).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    o.add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// `self^k` for a square matrix.
    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(field: FieldSpec, cols: usize, parts: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Reduced row-echelon form with zero rows removed.
    pub fn rref(&self) -> Matrix {
        let (rows, _) = rref_rows(self.row_vecs(), self.cols);
        Matrix::from_rows_with_cols(self.field, self.cols, rows).expect("rref preserves shape")
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.row_vecs(), self.cols).0.len()
    }

    /// `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (rows, pivots) = rref_rows(self.row_vecs(), self.cols);
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = self.field.zeros(self.cols);
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[i][free];
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.field, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.rows, self.col_vecs())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.cols, self.row_vecs())
    }

    /// Inverse of a square matrix, via RREF of `[M | I]`.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(self.field.unit(n, r));
                row
            })
            .collect();
        let (rows, pivots) = rref_rows(aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let inv: Vec<Vec<Scalar>> = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows_with_cols(self.field, n, inv).expect("square"))
    }

    /// Solve `M x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let (rows, pivots) = rref_rows(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = self.field.zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Some(x)
    }
}

/// Row-reduce `rows` (each of length `cols`) to RREF, dropping zero rows.
/// Returns the reduced rows and their pivot columns.
pub(crate) fn rref_rows(mut rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        if lead == rows.len() {
            break;
        }
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let inv = rows[lead][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for s in rows[lead][c..].iter_mut() {
                *s = &*s * &inv;
            }
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[c].is_zero() {
                continue;
            }
            let factor = -&row[c];
            for (s, t) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !t.is_zero() {
                    s.add_mul(&factor, t);
                }
            }
        }
        pivots.push(c);
        lead += 1;
    }
    rows.truncate(lead);
    (rows, pivots)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, s) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn mat(f: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(Matrix::identity(q(), 2).rref(), Matrix::identity(q(), 2));
        assert_eq!(mat(q(), &[&[2, 4], &[1, 2]]).rref(), mat(q(), &[&[1, 2]]));
        let g2 = FieldSpec::prime(2).unwrap();
        assert_eq!(mat(g2, &[&[1, 1], &[1, 1]]).rref(), mat(g2, &[&[1, 1]]));
    }

    #[test]
    fn kernel_examples() {
        let z = Matrix::zeros(q(), 3, 3);
        assert_eq!(z.kernel().dim(), 3);
        assert_eq!(Matrix::identity(q(), 3).kernel().dim(), 0);

        let g5 = FieldSpec::prime(5).unwrap();
        let m = mat(g5, &[&[1, 2]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        let v = k.basis_vectors().remove(0);
        assert!(m.apply(&v).iter().all(Scalar::is_zero));
        // span{(3,1)} normalizes to (1,2) since 3^{-1} = 2 in GF(5)
        assert_eq!(v, vec![g5.from_i64(1), g5.from_i64(2)]);
        assert!(k.contains(&[g5.from_i64(3), g5.from_i64(1)]));
    }

    #[test]
    fn solve_finds_preimage() {
        let m = mat(q(), &[&[1, 1], &[0, 2]]);
        let x = m.solve(&[q().from_i64(3), q().from_i64(4)]).unwrap();
        assert_eq!(x, vec![q().from_i64(1), q().from_i64(2)]);
        let singular = mat(q(), &[&[1, 1], &[1, 1]]);
        assert!(singular
            .solve(&[q().from_i64(1), q().from_i64(2)])
            .is_none());
    }

    #[test]
    fn product_and_transpose() {
        let a = mat(q(), &[&[1, 2], &[3, 4]]);
        let b = mat(q(), &[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), mat(q(), &[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        assert_eq!(a.trace(), q().from_i64(5));
    }
}
