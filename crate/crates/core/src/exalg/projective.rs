//! Enumeration of projective points over GF(p).
//!
//! Representatives are normalized so the first nonzero coordinate is 1. Points
//! are index-addressable, which lets parallel scans split the range and still
//! pick the least witness deterministically.

use super::field::{FieldSpec, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Number of projective points of `F^n`, `(p^n − 1)/(p − 1)`; `None` on overflow.
pub fn projective_count(p: u64, n: usize) -> Option<u128> {
    let mut pow: u128 = 1;
    let mut total: u128 = 0;
    for _ in 0..n {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(p as u128)?;
    }
    Some(total)
}

/// Lexicographically ordered projective points of `F^n`.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: FieldSpec,
    n: usize,
    p: u32,
    len: usize,
}

impl ProjectiveSpace {
    pub fn new(field: FieldSpec, n: usize, cap: u64) -> Result<Self> {
        let p = field.modulus().ok_or_else(|| {
            Error::UnsupportedMode("projective enumeration needs a finite field".into())
        })?;
        let count = projective_count(p as u64, n).unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(Error::EnumerationTooLarge { count, cap });
        }
        Ok(ProjectiveSpace {
            field,
            n,
            p,
            len: count as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The `k`-th point in lexicographic order.
    ///
    /// Points whose leading 1 sits further right are smaller, so blocks are
    /// laid out from the last coordinate backwards.
    pub fn point(&self, mut k: usize) -> Vec<Scalar> {
        assert!(k < self.len, "projective index out of range");
        let p = self.p as usize;
        let mut block = 1usize;
        for lead in (0..self.n).rev() {
            if k < block {
                let mut v = self.field.zeros(self.n);
                v[lead] = self.field.one();
                for pos in (lead + 1..self.n).rev() {
                    v[pos] = self.field.element((k % p) as u32);
                    k /= p;
                }
                return v;
            }
            k -= block;
            block *= p;
        }
        unreachable!()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.len).map(move |k| self.point(k))
    }
}

/// Normalize a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize(v: &[Scalar]) -> Vec<Scalar> {
    match v.iter().find(|s| !s.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|s| s * &inv).collect()
        }
    }
}

/// Projective points of a subspace, in lexicographic order of the ambient
/// coordinates.
///
/// Coefficients in the RREF basis are enumerated lexicographically; since each
/// coefficient is the value at its pivot column and earlier columns depend only
/// on earlier coefficients, this is lexicographic order on the vectors too.
#[derive(Clone, Debug)]
pub struct SubspacePoints {
    space: Subspace,
    coords: ProjectiveSpace,
}

impl SubspacePoints {
    pub fn new(space: &Subspace, cap: u64) -> Result<Self> {
        Ok(SubspacePoints {
            coords: ProjectiveSpace::new(space.field(), space.dim(), cap)?,
            space: space.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, k: usize) -> Vec<Scalar> {
        self.space.combine(&self.coords.point(k))
    }
}

/// The scan order used by every witness search: the standard basis vectors
/// that lie in the subspace come first (in index order), then all remaining
/// projective points in lexicographic order.
///
/// Putting the basis first makes witnesses read naturally (`e1` rather than an
/// arbitrary combination) and is still a fixed total order, so "least witness"
/// is well defined under parallel scans.
#[derive(Clone, Debug)]
pub struct ScanOrder {
    points: SubspacePoints,
    units: Vec<usize>,
    // lex ranks of the unit vectors, sorted, so the tail can skip them
    skip: Vec<usize>,
}

impl ScanOrder {
    pub fn new(space: &Subspace, cap: u64) -> Result<Self> {
        let points = SubspacePoints::new(space, cap)?;
        let n = space.ambient_dim();
        let f = space.field();
        let units: Vec<usize> = (0..n).filter(|&i| space.contains(&f.unit(n, i))).collect();
        let mut skip: Vec<usize> = units
            .iter()
            .map(|&i| {
                rank_of(
                    &points.coords,
                    &space.coordinates(&f.unit(n, i)).expect("member"),
                )
            })
            .collect();
        skip.sort_unstable();
        Ok(ScanOrder {
            points,
            units,
            skip,
        })
    }

    /// Scan order over the whole of `F^n`.
    pub fn full(field: FieldSpec, n: usize, cap: u64) -> Result<Self> {
        Self::new(&Subspace::full(field, n), cap)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, k: usize) -> Vec<Scalar> {
        if k < self.units.len() {
            let n = self.points.space.ambient_dim();
            return self.points.space.field().unit(n, self.units[k]);
        }
        let mut idx = k - self.units.len();
        for &r in &self.skip {
            if r <= idx {
                idx += 1;
            } else {
                break;
            }
        }
        self.points.point(idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }
}

fn rank_of(space: &ProjectiveSpace, coords: &[Scalar]) -> usize {
    let v = normalize(coords);
    let p = space.p as usize;
    let n = space.n;
    let lead = v.iter().position(|s| !s.is_zero()).expect("nonzero");
    let mut offset = 0usize;
    let mut block = 1usize;
    for _ in lead + 1..n {
        offset += block;
        block *= p;
    }
    let mut tail = 0usize;
    for s in &v[lead + 1..] {
        tail = tail * p + s.residue().expect("finite field") as usize;
    }
    offset + tail
}

/// First point (in scan order) at which `pred` yields `Some`, scanning in
/// parallel. The result does not depend on the thread count.
pub fn scan_first<T, F>(order: &ScanOrder, pred: F) -> Option<(Vec<Scalar>, T)>
where
    T: Send,
    F: Fn(&[Scalar]) -> Option<T> + Sync + Send,
{
    use rayon::prelude::*;
    (0..order.len()).into_par_iter().find_map_first(|k| {
        let v = order.point(k);
        pred(&v).map(|t| (v, t))
    })
}

/// Least point of a subspace in scan order: a standard basis vector if one is
/// contained, otherwise the last RREF row (the lexicographically least
/// normalized point).
pub fn least_point(space: &Subspace) -> Option<Vec<Scalar>> {
    if space.is_zero() {
        return None;
    }
    let n = space.ambient_dim();
    let f = space.field();
    for i in 0..n {
        let e = f.unit(n, i);
        if space.contains(&e) {
            return Some(e);
        }
    }
    space.basis().last().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn show(v: &[Scalar]) -> String {
        v.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    #[test]
    fn gf2_plane() {
        let s = ProjectiveSpace::new(gf(2), 2, 100).unwrap();
        let pts: Vec<String> = s.iter().map(|v| show(&v)).collect();
        assert_eq!(pts, ["0,1", "1,0", "1,1"]);
    }

    #[test]
    fn gf3_counts() {
        assert_eq!(ProjectiveSpace::new(gf(3), 1, 100).unwrap().len(), 1);
        assert_eq!(ProjectiveSpace::new(gf(3), 2, 100).unwrap().len(), 4);
        assert_eq!(ProjectiveSpace::new(gf(3), 0, 100).unwrap().len(), 0);
    }

    #[test]
    fn cap_and_field_errors() {
        assert!(matches!(
            ProjectiveSpace::new(gf(2), 10, 100),
            Err(Error::EnumerationTooLarge {
                count: 1023,
                cap: 100
            })
        ));
        assert!(ProjectiveSpace::new(FieldSpec::rational(), 2, 100).is_err());
    }

    #[test]
    fn lex_order_and_rank_inverse() {
        let s = ProjectiveSpace::new(gf(3), 3, 100).unwrap();
        let pts: Vec<Vec<Scalar>> = s.iter().collect();
        for w in pts.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (k, v) in pts.iter().enumerate() {
            assert_eq!(rank_of(&s, v), k);
        }
    }

    #[test]
    fn scan_order_puts_units_first() {
        let order = ScanOrder::full(gf(2), 3, 100).unwrap();
        let pts: Vec<String> = order.iter().map(|v| show(&v)).collect();
        assert_eq!(
            pts,
            ["1,0,0", "0,1,0", "0,0,1", "0,1,1", "1,0,1", "1,1,0", "1,1,1"]
        );
    }

    #[test]
    fn subspace_points_are_lex_sorted() {
        let f = gf(3);
        let s = Subspace::from_vectors(
            f,
            4,
            vec![
                vec![f.from_i64(1), f.from_i64(2), f.zero(), f.from_i64(1)],
                vec![f.zero(), f.zero(), f.one(), f.from_i64(2)],
            ],
        );
        let pts = SubspacePoints::new(&s, 100).unwrap();
        let all: Vec<Vec<Scalar>> = (0..pts.len()).map(|k| pts.point(k)).collect();
        assert_eq!(all.len(), 4);
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(least_point(&s).unwrap(), all[0]);
    }
}
