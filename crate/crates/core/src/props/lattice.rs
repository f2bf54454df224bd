//! Principal ideals and the full ideal lattice over a finite field.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::exalg::projective::projective_count;
use crate::exalg::{Scalar, ScanOrder, Subspace};
use crate::homlie::HomLieAlgebra;

/// The principal ideal of every projective point, deduplicated.
///
/// `ideals` is in order of first appearance along the scan order, so the
/// first offending entry of any scan over `ideals` also has the least
/// generating point.
#[derive(Clone, Debug)]
pub struct PrincipalTable {
    pub order: ScanOrder,
    pub ideal_of: Vec<u32>,
    pub ideals: Vec<Subspace>,
    pub first: Vec<usize>,
}

impl PrincipalTable {
    pub fn generator(&self, ideal: usize) -> Vec<Scalar> {
        self.order.point(self.first[ideal])
    }
}

fn check_count(l: &HomLieAlgebra, limits: &Limits) -> Result<()> {
    let p = l.field().modulus().ok_or_else(|| {
        Error::UnsupportedMode("exhaustive enumeration needs a finite field".into())
    })?;
    let count = projective_count(p as u64, l.dim()).unwrap_or(u128::MAX);
    if count > limits.max_enum as u128 {
        return Err(Error::EnumerationTooLarge {
            count,
            cap: limits.max_enum,
        });
    }
    Ok(())
}

pub fn principal_table(l: &HomLieAlgebra, limits: &Limits) -> Result<Arc<PrincipalTable>> {
    l.ensure_verified()?;
    check_count(l, limits)?;
    if let Some(t) = l.cache.principal.get() {
        return Ok(t.clone());
    }
    let order = ScanOrder::full(l.field(), l.dim(), limits.max_enum)?;
    let closures: Vec<Subspace> = (0..order.len())
        .into_par_iter()
        .map(|k| l.ideal_closure(&[order.point(k)]))
        .collect();
    let mut index: HashMap<Subspace, u32> = HashMap::new();
    let mut ideals = Vec::new();
    let mut first = Vec::new();
    let mut ideal_of = Vec::with_capacity(closures.len());
    for (k, s) in closures.into_iter().enumerate() {
        let id = *index.entry(s.clone()).or_insert_with(|| {
            ideals.push(s);
            first.push(k);
            (ideals.len() - 1) as u32
        });
        ideal_of.push(id);
    }
    let table = Arc::new(PrincipalTable {
        order,
        ideal_of,
        ideals,
        first,
    });
    let _ = l.cache.principal.set(table.clone());
    Ok(table)
}

/// All Hom-ideals, ordered by dimension and then by RREF entries.
#[derive(Clone, Debug, Serialize)]
pub struct IdealLattice {
    pub ideals: Vec<Subspace>,
    pub essential: Vec<bool>,
    /// Number of distinct nonzero principal ideals the lattice was built from.
    pub principal_count: usize,
    /// Sum-closure rounds needed.
    pub rounds: usize,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn essential_ideals(&self) -> impl Iterator<Item = &Subspace> {
        self.ideals
            .iter()
            .zip(&self.essential)
            .filter_map(|(i, &e)| e.then_some(i))
    }

    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.ideals.iter().position(|i| i == s)
    }
}

/// Every ideal is the sum of the principal ideals of its elements, so closing
/// the principal ideals under sums yields the whole lattice; intersections need
/// no separate pass.
pub fn ideal_lattice(l: &HomLieAlgebra, limits: &Limits) -> Result<Arc<IdealLattice>> {
    let table = principal_table(l, limits)?;
    if let Some(lat) = l.cache.lattice.get() {
        if lat.len() > limits.max_lattice {
            return Err(Error::LatticeTooLarge {
                cap: limits.max_lattice,
            });
        }
        return Ok(lat.clone());
    }
    let principals = &table.ideals;
    let mut seen: HashSet<Subspace> = HashSet::new();
    let zero = l.zero_space();
    seen.insert(zero.clone());
    let mut all = vec![zero];
    let mut frontier = Vec::new();
    for p in principals {
        if seen.insert(p.clone()) {
            all.push(p.clone());
            frontier.push(p.clone());
        }
    }
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        let mut next = Vec::new();
        for a in &frontier {
            for p in principals {
                if p.is_subspace_of(a) {
                    continue;
                }
                let s = a.sum_unchecked(p);
                if seen.insert(s.clone()) {
                    all.push(s.clone());
                    next.push(s);
                    if all.len() > limits.max_lattice {
                        return Err(Error::LatticeTooLarge {
                            cap: limits.max_lattice,
                        });
                    }
                }
            }
        }
        frontier = next;
    }
    if all.len() > limits.max_lattice {
        return Err(Error::LatticeTooLarge {
            cap: limits.max_lattice,
        });
    }
    all.sort_by_cached_key(|s| s.sort_key());
    let essential = all
        .par_iter()
        .map(|i| {
            principals
                .iter()
                .all(|p| !i.intersect_unchecked(p).is_zero())
        })
        .collect();
    let lat = Arc::new(IdealLattice {
        ideals: all,
        essential,
        principal_count: principals.len(),
        rounds,
    });
    let _ = l.cache.lattice.set(lat.clone());
    Ok(lat)
}
