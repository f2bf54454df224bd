//! Extensions `L ⊆ Q`, denominator ideals and the three quotient predicates.
//!
//! All three predicates are invariant under scaling `p` and `q` (brackets are
//! bilinear, subspaces are closed under scalars), which licenses projective
//! scans.

mod json;

use std::sync::Arc;

use serde::Serialize;

pub use json::ExtensionJson;

use crate::config::{Limits, Mode};
use crate::error::{Error, Result};
use crate::exalg::{least_point, scan_first, Matrix, Scalar, ScanOrder, Subspace};
use crate::homlie::HomLieAlgebra;
use crate::props::{self, degrade};
use crate::verdict::{Method, Verdict, Witness};

/// A Hom-subalgebra `L` of `Q`.
#[derive(Clone, Debug)]
pub struct Extension {
    ambient: HomLieAlgebra,
    sub: Subspace,
    sub_alg: Arc<HomLieAlgebra>,
    embed: Matrix,
    // kills exactly L
    proj: Matrix,
    // y ↦ [y, b] for the RREF basis b of L
    right_by_sub: Vec<Matrix>,
}

impl Extension {
    pub fn new(ambient: HomLieAlgebra, sub_basis: &[Vec<Scalar>]) -> Result<Self> {
        ambient.ensure_verified()?;
        let n = ambient.dim();
        if sub_basis.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(
                "subalgebra basis vector length".into(),
            ));
        }
        let sub = Subspace::span_of(ambient.field(), n, sub_basis);
        if sub.dim() != sub_basis.len() {
            return Err(Error::PreconditionFailed(
                "subalgebra basis rows are dependent".into(),
            ));
        }
        let (sub_alg, embed) = ambient.induced_on(&sub)?;
        let proj = sub.quotient_map();
        let right_by_sub = sub.basis().iter().map(|b| ambient.right_mult(b)).collect();
        Ok(Extension {
            ambient,
            sub,
            sub_alg: Arc::new(sub_alg),
            embed,
            proj,
            right_by_sub,
        })
    }

    /// `L ⊆ L`.
    pub fn trivial(l: HomLieAlgebra) -> Result<Self> {
        let n = l.dim();
        let basis: Vec<Vec<Scalar>> = (0..n).map(|i| l.unit(i)).collect();
        Extension::new(l, &basis)
    }

    pub fn ambient(&self) -> &HomLieAlgebra {
        &self.ambient
    }

    /// `L` as a subspace of `Q`.
    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// `L` as an algebra in the coordinates of its RREF basis.
    pub fn sub_algebra(&self) -> &HomLieAlgebra {
        &self.sub_alg
    }

    /// Inclusion `F^dim L → F^dim Q`.
    pub fn embedding(&self) -> &Matrix {
        &self.embed
    }

    pub fn to_sub_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.sub.coordinates(v)
    }

    pub fn from_sub_coords(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.sub.combine(c)
    }

    /// Push a subspace given in L-coordinates into Q.
    pub fn lift(&self, s: &Subspace) -> Subspace {
        s.image_under(&self.embed)
    }

    /// Pull a subspace of Q contained in L back to L-coordinates.
    pub fn restrict(&self, s: &Subspace) -> Subspace {
        Subspace::from_vectors(
            self.sub_alg.field(),
            self.sub.dim(),
            s.basis()
                .iter()
                .map(|v| self.sub.coordinates(v).expect("inside L")),
        )
    }

    pub fn in_sub(&self, v: &[Scalar]) -> bool {
        self.sub.contains(v)
    }

    pub fn is_trivial(&self) -> bool {
        self.sub.is_full()
    }

    fn check_vector(&self, q: &[Scalar]) -> Result<()> {
        if q.len() != self.ambient.dim() || q.iter().any(|s| s.field() != self.ambient.field()) {
            return Err(Error::DimensionMismatch(
                "vector is not an element of Q".into(),
            ));
        }
        Ok(())
    }

    /// Span of `q` and all left-normed brackets `[[q, x₁], …, x_k]` with `x_i ∈ L`.
    pub fn lq_span(&self, q: &[Scalar]) -> Result<Subspace> {
        self.check_vector(q)?;
        Ok(self.lq_unchecked(q))
    }

    fn lq_unchecked(&self, q: &[Scalar]) -> Subspace {
        Subspace::closure(
            self.ambient.field(),
            self.ambient.dim(),
            &[q.to_vec()],
            &self.right_by_sub,
        )
    }

    /// `x ↦ Π_L [x, w]` restricted to `x ∈ L`, in L-coordinates.
    fn leaving_l(&self, w: &[Scalar]) -> Matrix {
        self.proj.mul(&self.ambient.right_mult(w)).mul(&self.embed)
    }

    /// `{x ∈ L : [x, α(W)] ⊆ L}` in L-coordinates.
    fn colon_of(&self, w: &Subspace) -> Subspace {
        let d = self.sub.dim();
        let parts: Vec<Matrix> = w
            .basis()
            .iter()
            .map(|v| self.leaving_l(&self.ambient.twist_vec(v)))
            .collect();
        if parts.is_empty() || self.proj.rows() == 0 {
            return Subspace::full(self.ambient.field(), d);
        }
        Matrix::vstack(self.ambient.field(), d, &parts).kernel()
    }

    /// The denominator ideal `(L : q)`, which is a Hom-ideal of `L`.
    pub fn denominator_ideal(&self, q: &[Scalar]) -> Result<DenominatorData> {
        self.check_vector(q)?;
        let d = self.denominator_unchecked(q);
        if !self.sub_alg.is_ideal(&d.colon) {
            return Err(Error::StructureViolation(
                "(L:q) is not a Hom-ideal of L".into(),
            ));
        }
        Ok(d)
    }

    fn denominator_unchecked(&self, q: &[Scalar]) -> DenominatorData {
        let lq = self.lq_unchecked(q);
        let colon = self.colon_of(&lq);
        DenominatorData {
            q: q.to_vec(),
            colon_in_q: self.lift(&colon),
            lq,
            colon,
        }
    }

    /// `I* = ∩_i (L : e_i)` over the basis of Q; contained in every `(L : q)`.
    pub fn uniform_denominator(&self) -> Subspace {
        let n = self.ambient.dim();
        let mut acc = Subspace::full(self.ambient.field(), self.sub.dim());
        for i in 0..n {
            let d = self.denominator_unchecked(&self.ambient.unit(i));
            acc = acc.intersect_unchecked(&d.colon);
        }
        acc
    }

    /// `{p ∈ Q : [D, α(p)] = 0}` for `D ⊆ Q`.
    pub fn twisted_annihilator_in_q(&self, d: &Subspace) -> Subspace {
        let q = &self.ambient;
        let parts: Vec<Matrix> = d
            .basis()
            .iter()
            .map(|x| q.left_mult(x).mul(q.alpha()))
            .collect();
        if parts.is_empty() {
            return q.full_space();
        }
        Matrix::vstack(q.field(), q.dim(), &parts).kernel()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DenominatorData {
    pub q: Vec<Scalar>,
    /// `_L(q)` in Q-coordinates.
    pub lq: Subspace,
    /// `(L : q)` in L-coordinates.
    pub colon: Subspace,
    /// `(L : q)` in Q-coordinates.
    pub colon_in_q: Subspace,
}

fn resolve(mode: Mode, e: &Extension) -> Result<Mode> {
    props::resolve(mode, e.ambient())
}

fn q_scan(e: &Extension, limits: &Limits) -> Result<ScanOrder> {
    ScanOrder::full(e.ambient.field(), e.ambient.dim(), limits.max_enum)
}

/// Definition of a weak algebra of quotients: every `q ≠ 0` has some `x ∈ L`
/// with `0 ≠ [x, α(q)] ∈ L`.
pub fn is_weak_quotient_algebra(e: &Extension, mode: Mode, limits: &Limits) -> Result<Verdict> {
    let offends = |q: &[Scalar]| -> bool {
        let aq = e.ambient.twist_vec(q);
        let sol = e.leaving_l(&aq).kernel();
        let r = e.ambient.right_mult(&aq).mul(&e.embed);
        sol.basis()
            .iter()
            .all(|x| r.apply(x).iter().all(Scalar::is_zero))
    };
    match resolve(mode, e)? {
        Mode::Exhaustive => degrade(
            (|| {
                let order = q_scan(e, limits)?;
                Ok(match scan_first(&order, |q| offends(q).then_some(())) {
                    Some((q, ())) => Verdict::fails(Method::Exhaustive, Witness::Vector { v: q }),
                    None => Verdict::holds(Method::Exhaustive),
                })
            })(),
            Method::Exhaustive,
        ),
        m => {
            let n = e.ambient.dim();
            if let Some(q) = (0..n).map(|i| e.ambient.unit(i)).find(|q| offends(q)) {
                return Ok(Verdict::fails(Method::WitnessSet, Witness::Vector { v: q }));
            }
            if m != Mode::Witness && quotient_derived(e, limits)?.is_true() {
                return Ok(Verdict::holds(Method::DerivedCriterion)
                    .with_note("every algebra of quotients is a weak one"));
            }
            Ok(Verdict::unknown(
                Method::WitnessSet,
                "no basis vector refutes",
            ))
        }
    }
}

/// For fixed `q`, the `p` with `[(L:q), α(p)] = 0`; a nonzero member refutes.
fn quotient_kernel_at(e: &Extension, q: &[Scalar]) -> Subspace {
    let d = e.denominator_unchecked(q);
    e.twisted_annihilator_in_q(&d.colon_in_q)
}

/// Is `Q` an algebra of quotients of `L`?
pub fn is_quotient_algebra(e: &Extension, mode: Mode, limits: &Limits) -> Result<Verdict> {
    match resolve(mode, e)? {
        Mode::Exhaustive => degrade(quotient_exhaustive(e, limits), Method::Exhaustive),
        Mode::Derived => {
            let v = quotient_derived(e, limits)?;
            if v.is_unknown() && mode == Mode::Auto {
                return Ok(quotient_witness(e).unwrap_or(v));
            }
            Ok(v)
        }
        Mode::Witness => Ok(quotient_witness(e)
            .unwrap_or_else(|| Verdict::unknown(Method::WitnessSet, "no basis q refutes"))),
        Mode::Auto => unreachable!(),
    }
}

/// Scan `q` over 0 and then the projective points; for each `q` the set of bad
/// `p` is a subspace, so only its least point is needed.
pub fn quotient_exhaustive(e: &Extension, limits: &Limits) -> Result<Verdict> {
    let zero = e.ambient.zero_vector();
    let k0 = quotient_kernel_at(e, &zero);
    if let Some(p) = least_point(&k0) {
        return Ok(Verdict::fails(
            Method::Exhaustive,
            Witness::Pair { p, q: zero },
        ));
    }
    let order = q_scan(e, limits)?;
    Ok(
        match scan_first(&order, |q| least_point(&quotient_kernel_at(e, q))) {
            Some((q, p)) => Verdict::fails(Method::Exhaustive, Witness::Pair { p, q }),
            None => Verdict::holds(Method::Exhaustive),
        },
    )
}

fn quotient_witness(e: &Extension) -> Option<Verdict> {
    let n = e.ambient.dim();
    std::iter::once(e.ambient.zero_vector())
        .chain((0..n).map(|i| e.ambient.unit(i)))
        .find_map(|q| {
            least_point(&quotient_kernel_at(e, &q))
                .map(|p| Verdict::fails(Method::WitnessSet, Witness::Pair { p, q }))
        })
}

/// Result of the uniform-denominator criterion, with the pieces it used.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedData {
    /// `I*` in Q-coordinates.
    pub uniform: Subspace,
    /// `{q : [I*, α(q)] = 0}`.
    pub kernel: Subspace,
}

pub fn derived_data(e: &Extension) -> DerivedData {
    let uniform = e.lift(&e.uniform_denominator());
    let kernel = e.twisted_annihilator_in_q(&uniform);
    DerivedData { uniform, kernel }
}

/// `K = 0` proves the predicate since `I* ⊆ (L:q)` for every `q`. Conversely,
/// if `L` is semiprime and `Q` were an algebra of quotients, `I*` would be an
/// essential ideal with zero annihilator in `Q`, forcing `K = 0`.
pub fn quotient_derived(e: &Extension, limits: &Limits) -> Result<Verdict> {
    let data = derived_data(e);
    if data.kernel.is_zero() {
        return Ok(Verdict::holds(Method::DerivedCriterion));
    }
    let semiprime = props::is_semiprime(e.sub_algebra(), Mode::Auto, limits)?;
    if semiprime.is_true() {
        let k = least_point(&data.kernel).expect("nonzero");
        return Ok(
            Verdict::fails(Method::DerivedCriterion, Witness::Vector { v: k })
                .with_note("L semiprime and [I*, alpha(k)] = 0"),
        );
    }
    Ok(Verdict::unknown(
        Method::DerivedCriterion,
        "uniform denominator kernel is nonzero and L is not known to be semiprime",
    ))
}

/// Definition of ideally absorbed: every `q ≠ 0` admits an ideal `I` of `L`
/// with `Ann_L(I) = 0` and `0 ≠ [I, α(q)] ⊆ L`.
pub fn is_ideally_absorbed(e: &Extension, mode: Mode, limits: &Limits) -> Result<Verdict> {
    match resolve(mode, e)? {
        Mode::Exhaustive => degrade(absorbed_exhaustive(e, limits), Method::Exhaustive),
        Mode::Derived | Mode::Witness => absorbed_derived(e, limits),
        Mode::Auto => unreachable!(),
    }
}

fn absorbs(e: &Extension, ideal_in_q: &Subspace, q: &[Scalar]) -> bool {
    let aq = e.ambient.twist_vec(q);
    let mut nonzero = false;
    for x in ideal_in_q.basis() {
        let v = e.ambient.bracket_vec(x, &aq);
        if !e.sub.contains(&v) {
            return false;
        }
        nonzero |= v.iter().any(|s| !s.is_zero());
    }
    nonzero
}

fn absorbed_exhaustive(e: &Extension, limits: &Limits) -> Result<Verdict> {
    let l = e.sub_algebra();
    let lat = props::ideal_lattice(l, limits)?;
    let candidates: Vec<Subspace> = lat
        .ideals
        .iter()
        .filter(|i| l.annihilator_unchecked(i).is_zero())
        .map(|i| e.lift(i))
        .collect();
    let order = q_scan(e, limits)?;
    Ok(
        match scan_first(&order, |q| {
            (!candidates.iter().any(|i| absorbs(e, i, q))).then_some(())
        }) {
            Some((q, ())) => Verdict::fails(Method::Exhaustive, Witness::Vector { v: q }),
            None => Verdict::holds(Method::Exhaustive),
        },
    )
}

fn absorbed_derived(e: &Extension, limits: &Limits) -> Result<Verdict> {
    let data = derived_data(e);
    let istar = e.restrict(&data.uniform);
    if e.sub_algebra().annihilator_unchecked(&istar).is_zero() && data.kernel.is_zero() {
        return Ok(Verdict::holds(Method::DerivedCriterion).with_note("I* absorbs every q"));
    }
    let q = quotient_derived(e, limits)?;
    if q.is_false() {
        return Ok(q);
    }
    Ok(Verdict::unknown(
        Method::DerivedCriterion,
        "I* does not decide",
    ))
}
