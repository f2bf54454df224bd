//! Structural predicates: nondegenerate, semiprime, prime, essential.
//!
//! Quantifiers over "every nonzero ideal" are reduced to principal ideals: any
//! nonzero ideal contains the principal ideal of each of its nonzero elements,
//! and each predicate is monotone in the right direction for that containment.

mod lattice;

use crate::config::{Limits, Mode};
use crate::error::{Error, Result};
use crate::exalg::{scan_first, Matrix, Scalar, ScanOrder, Subspace};
use crate::homlie::HomLieAlgebra;
use crate::verdict::{Method, Truth, Verdict, Witness};

pub use lattice::{ideal_lattice, principal_table, IdealLattice, PrincipalTable};

/// Concrete strategy for a requested mode on a given field.
pub(crate) fn resolve(mode: Mode, l: &HomLieAlgebra) -> Result<Mode> {
    match (mode, l.field().is_finite()) {
        (Mode::Exhaustive, false) => Err(Error::UnsupportedMode(
            "exhaustive mode needs a finite field".into(),
        )),
        (Mode::Auto, true) => Ok(Mode::Exhaustive),
        (Mode::Auto, false) => Ok(Mode::Derived),
        (m, _) => Ok(m),
    }
}

/// Turn a cap overflow into an Unknown verdict; other errors pass through.
pub(crate) fn degrade(r: Result<Verdict>, method: Method) -> Result<Verdict> {
    match r {
        Err(e @ (Error::EnumerationTooLarge { .. } | Error::LatticeTooLarge { .. })) => {
            Ok(Verdict::unknown(method, e.to_string()))
        }
        other => other,
    }
}

fn require_ideal(l: &HomLieAlgebra, i: &Subspace) -> Result<()> {
    l.check_ambient(i)?;
    let v = l.ideal_verdict(i);
    if v.is_true() {
        Ok(())
    } else {
        Err(Error::NotAnIdeal(
            serde_json::to_string(&v.witness).unwrap_or_default(),
        ))
    }
}

/// `Ann_L(L)`.
pub fn center_like(l: &HomLieAlgebra) -> Result<Subspace> {
    l.annihilator(&l.full_space())
}

/// Is `I` essential, i.e. does it meet every nonzero Hom-ideal?
///
/// The zero ideal counts as essential exactly when `L = 0`.
pub fn is_essential(
    l: &HomLieAlgebra,
    i: &Subspace,
    mode: Mode,
    limits: &Limits,
) -> Result<Verdict> {
    l.ensure_verified()?;
    require_ideal(l, i)?;
    match resolve(mode, l)? {
        Mode::Exhaustive => degrade(essential_exhaustive(l, i, limits), Method::Exhaustive),
        Mode::Derived => {
            let v = essential_structural(l, i, limits)?;
            if v.is_unknown() && mode == Mode::Auto {
                return Ok(essential_witness(l, i).unwrap_or(v));
            }
            Ok(v)
        }
        Mode::Witness => Ok(essential_witness(l, i)
            .unwrap_or_else(|| Verdict::unknown(Method::WitnessSet, "no basis vector refutes"))),
        Mode::Auto => unreachable!(),
    }
}

fn essential_exhaustive(l: &HomLieAlgebra, i: &Subspace, limits: &Limits) -> Result<Verdict> {
    let table = principal_table(l, limits)?;
    for (k, p) in table.ideals.iter().enumerate() {
        if i.intersect_unchecked(p).is_zero() {
            return Ok(Verdict::fails(
                Method::Exhaustive,
                Witness::subspace(Some(table.generator(k)), p),
            ));
        }
    }
    Ok(Verdict::holds(Method::Exhaustive))
}

fn essential_structural(l: &HomLieAlgebra, i: &Subspace, limits: &Limits) -> Result<Verdict> {
    let ann = l.annihilator_unchecked(i);
    if ann.is_zero() {
        return Ok(Verdict::holds(Method::Structural).with_note("Ann_L(I) = 0"));
    }
    if is_semiprime(l, Mode::Derived, limits)?.is_true() {
        // In a semiprime algebra I ∩ Ann(I) squares to zero, so Ann(I) misses I.
        return Ok(
            Verdict::fails(Method::Structural, Witness::subspace(None, &ann))
                .with_note("semiprime and Ann_L(I) != 0"),
        );
    }
    Ok(Verdict::unknown(
        Method::Structural,
        "Ann_L(I) != 0 but semiprimeness is not established",
    ))
}

fn essential_witness(l: &HomLieAlgebra, i: &Subspace) -> Option<Verdict> {
    (0..l.dim()).find_map(|k| {
        let e = l.unit(k);
        let p = l.ideal_closure(std::slice::from_ref(&e));
        i.intersect_unchecked(&p)
            .is_zero()
            .then(|| Verdict::fails(Method::WitnessSet, Witness::subspace(Some(e), &p)))
    })
}

fn ad_basis(l: &HomLieAlgebra) -> Vec<Matrix> {
    (0..l.dim()).map(|i| l.ad_unchecked(&l.unit(i))).collect()
}

fn combine_matrices(l: &HomLieAlgebra, mats: &[Matrix], x: &[Scalar]) -> Matrix {
    let n = l.dim();
    let mut acc = Matrix::zeros(l.field(), n, n);
    for (m, c) in mats.iter().zip(x) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

/// Is there a nonzero `x` with `(ad_x)² = 0`?
pub fn is_nondegenerate(l: &HomLieAlgebra, mode: Mode, limits: &Limits) -> Result<Verdict> {
    l.ensure_verified()?;
    let ads = ad_basis(l);
    let zero_square = |x: &[Scalar]| {
        let a = combine_matrices(l, &ads, x);
        a.mul(&a).is_zero()
    };
    match resolve(mode, l)? {
        Mode::Exhaustive => degrade(
            (|| {
                let order = ScanOrder::full(l.field(), l.dim(), limits.max_enum)?;
                Ok(match scan_first(&order, |x| zero_square(x).then_some(())) {
                    Some((x, ())) => Verdict::fails(Method::Exhaustive, Witness::Vector { v: x }),
                    None => Verdict::holds(Method::Exhaustive),
                })
            })(),
            Method::Exhaustive,
        ),
        _ => Ok((0..l.dim())
            .map(|i| l.unit(i))
            .find(|x| zero_square(x))
            .map(|x| Verdict::fails(Method::WitnessSet, Witness::Vector { v: x }))
            .unwrap_or_else(|| {
                Verdict::unknown(
                    Method::WitnessSet,
                    "no basis vector is an absolute zero divisor",
                )
            })),
    }
}

/// Radical of the form `κ(x, z) = tr(ad_x ad_z)`.
///
/// If `[I, α(I)] = 0` for an ideal `I` then `(ad_x ad_z)² = 0` for `x ∈ I`, so
/// `I` lies in this radical. A zero radical therefore certifies semiprimeness
/// in any characteristic.
pub fn trace_form_radical(l: &HomLieAlgebra) -> Result<Subspace> {
    l.ensure_verified()?;
    let ads = ad_basis(l);
    let n = l.dim();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| ads[i].mul(&ads[j]).trace()).collect())
        .collect();
    Ok(Matrix::from_rows_with_cols(l.field(), n, rows)?.kernel())
}

/// Do the twist and the right multiplications generate the full matrix
/// algebra? Then the only invariant subspaces, hence the only ideals, are 0
/// and L.
pub fn has_trivial_lattice(l: &HomLieAlgebra) -> Result<bool> {
    l.ensure_verified()?;
    let n = l.dim();
    if n == 0 {
        return Ok(true);
    }
    let mut gens = vec![l.alpha().clone()];
    gens.extend(l.right_mults().iter().cloned());
    let alg = crate::envelope::operator_closure(&gens, true);
    Ok(alg.dim() == n * n)
}

fn offends_semiprime(l: &HomLieAlgebra, p: &Subspace) -> bool {
    l.bracket_span(p, p).is_zero()
}

/// No nonzero ideal `I` with `[I, α(I)] = 0`.
pub fn is_semiprime(l: &HomLieAlgebra, mode: Mode, limits: &Limits) -> Result<Verdict> {
    l.ensure_verified()?;
    match resolve(mode, l)? {
        Mode::Exhaustive => degrade(
            (|| {
                let table = principal_table(l, limits)?;
                for (k, p) in table.ideals.iter().enumerate() {
                    if offends_semiprime(l, p) {
                        return Ok(Verdict::fails(
                            Method::Exhaustive,
                            Witness::subspace(Some(table.generator(k)), p),
                        ));
                    }
                }
                Ok(Verdict::holds(Method::Exhaustive))
            })(),
            Method::Exhaustive,
        ),
        Mode::Derived => {
            if let Some(v) = semiprime_witness(l) {
                return Ok(v);
            }
            if trace_form_radical(l)?.is_zero() {
                return Ok(
                    Verdict::holds(Method::DerivedCriterion).with_note("trace form nondegenerate")
                );
            }
            if has_trivial_lattice(l)? {
                let full = l.full_space();
                return Ok(if offends_semiprime(l, &full) {
                    Verdict::fails(Method::DerivedCriterion, Witness::subspace(None, &full))
                } else {
                    Verdict::holds(Method::DerivedCriterion).with_note("only ideals are 0 and L")
                });
            }
            Ok(Verdict::unknown(
                Method::DerivedCriterion,
                "trace form degenerate",
            ))
        }
        Mode::Witness => Ok(semiprime_witness(l)
            .unwrap_or_else(|| Verdict::unknown(Method::WitnessSet, "no basis vector refutes"))),
        Mode::Auto => unreachable!(),
    }
}

fn semiprime_witness(l: &HomLieAlgebra) -> Option<Verdict> {
    (0..l.dim()).find_map(|k| {
        let e = l.unit(k);
        let p = l.ideal_closure(std::slice::from_ref(&e));
        offends_semiprime(l, &p)
            .then(|| Verdict::fails(Method::WitnessSet, Witness::subspace(Some(e), &p)))
    })
}

fn prime_pair(
    l: &HomLieAlgebra,
    gens: &[(Vec<Scalar>, Subspace)],
    method: Method,
) -> Option<Verdict> {
    for (x, i) in gens {
        for (y, j) in gens {
            if l.bracket_span(i, j).is_zero() {
                return Some(Verdict::fails(
                    method,
                    Witness::IdealPair {
                        x: x.clone(),
                        y: y.clone(),
                        i: i.basis_vectors(),
                        j: j.basis_vectors(),
                    },
                ));
            }
        }
    }
    None
}

/// No pair of nonzero ideals with `[I, α(J)] = 0`.
pub fn is_prime(l: &HomLieAlgebra, mode: Mode, limits: &Limits) -> Result<Verdict> {
    l.ensure_verified()?;
    let basis_gens = || -> Vec<(Vec<Scalar>, Subspace)> {
        (0..l.dim())
            .map(|k| {
                let e = l.unit(k);
                let p = l.ideal_closure(std::slice::from_ref(&e));
                (e, p)
            })
            .collect()
    };
    match resolve(mode, l)? {
        Mode::Exhaustive => degrade(
            (|| {
                let table = principal_table(l, limits)?;
                let gens: Vec<(Vec<Scalar>, Subspace)> = table
                    .ideals
                    .iter()
                    .enumerate()
                    .map(|(k, p)| (table.generator(k), p.clone()))
                    .collect();
                Ok(prime_pair(l, &gens, Method::Exhaustive)
                    .unwrap_or_else(|| Verdict::holds(Method::Exhaustive)))
            })(),
            Method::Exhaustive,
        ),
        Mode::Derived => {
            if let Some(v) = prime_pair(l, &basis_gens(), Method::WitnessSet) {
                return Ok(v);
            }
            if has_trivial_lattice(l)? {
                let full = l.full_space();
                return Ok(if offends_semiprime(l, &full) {
                    Verdict::fails(Method::DerivedCriterion, Witness::subspace(None, &full))
                } else {
                    Verdict::holds(Method::DerivedCriterion).with_note("only ideals are 0 and L")
                });
            }
            Ok(Verdict::unknown(
                Method::DerivedCriterion,
                "no refuting basis pair",
            ))
        }
        Mode::Witness => Ok(prime_pair(l, &basis_gens(), Method::WitnessSet)
            .unwrap_or_else(|| Verdict::unknown(Method::WitnessSet, "no refuting basis pair"))),
        Mode::Auto => unreachable!(),
    }
}

/// Prime via annihilators: every nonzero lattice ideal has zero annihilator.
pub fn is_prime_by_annihilators(l: &HomLieAlgebra, limits: &Limits) -> Result<Truth> {
    let lat = ideal_lattice(l, limits)?;
    Ok(Truth::from_bool(
        lat.ideals
            .iter()
            .filter(|i| !i.is_zero())
            .all(|i| l.annihilator_unchecked(i).is_zero()),
    ))
}

/// Intersection of all essential ideals. It is itself essential (finite
/// intersections of essential ideals are essential), which is re-checked.
pub fn minimum_essential_ideal(l: &HomLieAlgebra, limits: &Limits) -> Result<Subspace> {
    l.ensure_verified()?;
    let lat = ideal_lattice(l, limits)?;
    let mut acc = l.full_space();
    for i in lat.essential_ideals() {
        acc = acc.intersect_unchecked(i);
    }
    let table = principal_table(l, limits)?;
    if table
        .ideals
        .iter()
        .any(|p| acc.intersect_unchecked(p).is_zero())
    {
        return Err(Error::StructureViolation(
            "intersection of essential ideals is not essential".into(),
        ));
    }
    Ok(acc)
}

/// `I¹ = I`, `I^k = [I^{k−1}, α(I)]`.
pub fn ideal_power(l: &HomLieAlgebra, i: &Subspace, k: usize) -> Result<Subspace> {
    l.ensure_verified()?;
    require_ideal(l, i)?;
    if k == 0 {
        return Err(Error::PreconditionFailed(
            "ideal powers start at k = 1".into(),
        ));
    }
    let mut acc = i.clone();
    for step in 2..=k {
        acc = l.bracket_span(&acc, i);
        if !l.is_ideal(&acc) {
            return Err(Error::StructureViolation(format!(
                "power {step} is not a Hom-ideal"
            )));
        }
    }
    Ok(acc)
}
