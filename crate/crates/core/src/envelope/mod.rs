//! Associative envelopes generated by inner derivations, and dense extensions.

mod operator;

use serde::Serialize;

pub(crate) use operator::unflat;
pub use operator::{
    is_assoc_semiprime, is_left_quotient_algebra, operator_closure, operator_closure_in,
    trace_radical, OperatorAlgebra, Side,
};

use crate::config::{Limits, Mode};
use crate::error::{Error, Result};
use crate::exalg::{Matrix, Subspace};
use crate::homlie::HomLieAlgebra;
use crate::props;
use crate::quotients::Extension;
use crate::verdict::{Method, Truth, Verdict, Witness};

/// Which basis generates the envelope inside `End(Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// `A_Q(L)`
    L,
    /// `A(Q)`
    Q,
}

fn ad_ops(q: &HomLieAlgebra, vectors: &[Vec<crate::exalg::Scalar>]) -> Vec<Matrix> {
    vectors.iter().map(|v| q.ad_unchecked(v)).collect()
}

fn labelled(mut a: OperatorAlgebra, labels: Vec<String>) -> OperatorAlgebra {
    a.set_generators(labels);
    a
}

/// Non-unital algebra generated by `ad_x` on `Q`, for `x` in a basis of `L` or `Q`.
pub fn inner_envelope(e: &Extension, source: Source) -> OperatorAlgebra {
    let q = e.ambient();
    let vecs = match source {
        Source::L => e.sub().basis().to_vec(),
        Source::Q => (0..q.dim()).map(|i| q.unit(i)).collect(),
    };
    let gens = ad_ops(q, &vecs);
    let labels = match source {
        Source::L => (0..vecs.len()).map(|i| format!("ad(l{i})")).collect(),
        Source::Q => (0..vecs.len()).map(|i| format!("ad(e{})", i + 1)).collect(),
    };
    labelled(
        operator_closure_in(q.field(), q.dim(), &gens, false),
        labels,
    )
}

/// `A(L)`: non-unital algebra generated by the inner derivations of `L`.
pub fn envelope(l: &HomLieAlgebra) -> OperatorAlgebra {
    let vecs: Vec<_> = (0..l.dim()).map(|i| l.unit(i)).collect();
    let labels = (0..l.dim()).map(|i| format!("ad(e{})", i + 1)).collect();
    labelled(
        operator_closure_in(l.field(), l.dim(), &ad_ops(l, &vecs), false),
        labels,
    )
}

/// `M(L)`: the identity together with the inner derivations.
pub fn multiplication_algebra(l: &HomLieAlgebra) -> OperatorAlgebra {
    let vecs: Vec<_> = (0..l.dim()).map(|i| l.unit(i)).collect();
    let mut labels: Vec<String> = vec!["id".into()];
    labels.extend((0..l.dim()).map(|i| format!("ad(e{})", i + 1)));
    labelled(
        operator_closure_in(l.field(), l.dim(), &ad_ops(l, &vecs), true),
        labels,
    )
}

/// `A₀ = {μ ∈ A(Q) : μ(L) ⊆ L}`.
pub fn invariant_subalgebra_a0(e: &Extension) -> Result<OperatorAlgebra> {
    let aq = inner_envelope(e, Source::Q);
    invariant_part(&aq, e)
}

pub(crate) fn invariant_part(aq: &OperatorAlgebra, e: &Extension) -> Result<OperatorAlgebra> {
    let span = aq.stabilizing(e.sub(), e.sub());
    let a0 = aq.with_span(span, vec!["A(Q) ∩ stab(L)".into()]);
    if !a0.is_product_closed() {
        return Err(Error::StructureViolation(
            "A0 is not closed under products".into(),
        ));
    }
    Ok(a0)
}

/// `rann_A(X)` or `lann_A(X)` for a sub-span `X ⊆ A`.
pub fn one_sided_annihilator(a: &OperatorAlgebra, x: &Subspace, side: Side) -> Result<Subspace> {
    if x.ambient_dim() != a.span().ambient_dim() {
        return Err(Error::DimensionMismatch(
            "sub-span lives in a different matrix space".into(),
        ));
    }
    if !x.is_subspace_of(a.span()) {
        return Err(Error::PreconditionFailed("X is not contained in A".into()));
    }
    let ann = a.annihilator(x, side);
    // the annihilator of a one-sided ideal on the matching side is two-sided
    let basis = a.basis();
    let xs: Vec<Matrix> = x
        .basis()
        .iter()
        .map(|v| unflat(a.field(), a.ambient_dim(), v))
        .collect();
    let right_ideal =
        OperatorAlgebra::product_span(a.field(), a.ambient_dim(), &xs, &basis).is_subspace_of(x);
    let left_ideal =
        OperatorAlgebra::product_span(a.field(), a.ambient_dim(), &basis, &xs).is_subspace_of(x);
    let relevant = match side {
        Side::Right => right_ideal,
        Side::Left => left_ideal,
    };
    if relevant {
        let anns: Vec<Matrix> = ann
            .basis()
            .iter()
            .map(|v| unflat(a.field(), a.ambient_dim(), v))
            .collect();
        let two_sided = OperatorAlgebra::product_span(a.field(), a.ambient_dim(), &anns, &basis)
            .is_subspace_of(&ann)
            && OperatorAlgebra::product_span(a.field(), a.ambient_dim(), &basis, &anns)
                .is_subspace_of(&ann);
        if !two_sided {
            return Err(Error::StructureViolation(
                "annihilator of a one-sided ideal is not two-sided".into(),
            ));
        }
    }
    Ok(ann)
}

fn require_ideal(l: &HomLieAlgebra, i: &Subspace) -> Result<()> {
    l.check_ambient(i)?;
    if !l.is_ideal(i) {
        return Err(Error::NotAnIdeal(format!(
            "subspace of dimension {} is not a Hom-ideal",
            i.dim()
        )));
    }
    Ok(())
}

/// `A_Q(I)` for `I ⊆ L` given in L-coordinates.
pub fn envelope_of_ideal(e: &Extension, i: &Subspace) -> Result<OperatorAlgebra> {
    require_ideal(e.sub_algebra(), i)?;
    let q = e.ambient();
    let lifted = e.lift(i);
    let gens = ad_ops(q, lifted.basis());
    let labels = (0..gens.len()).map(|k| format!("ad(i{k})")).collect();
    Ok(labelled(
        operator_closure_in(q.field(), q.dim(), &gens, false),
        labels,
    ))
}

/// `Ĩ`, the ideal of `A_Q(L)` generated by `A_Q(I)`, for `I` in L-coordinates.
pub fn assoc_ideal_generated(e: &Extension, i: &Subspace) -> Result<OperatorAlgebra> {
    let aqi = envelope_of_ideal(e, i)?;
    let aql = inner_envelope(e, Source::L);
    let (f, n) = (aql.field(), aql.ambient_dim());
    let left =
        OperatorAlgebra::product_span(f, n, &aql.basis(), &aqi.basis()).sum_unchecked(aqi.span());
    let right =
        OperatorAlgebra::product_span(f, n, &aqi.basis(), &aql.basis()).sum_unchecked(aqi.span());
    if left != right {
        return Err(Error::StructureViolation(
            "A_Q(L)A_Q(I) + A_Q(I) differs from A_Q(I)A_Q(L) + A_Q(I)".into(),
        ));
    }
    Ok(aql.with_span(left, vec!["A_Q(L)·A_Q(I) + A_Q(I)".into()]))
}

/// `L^ann = {μ ∈ M(Q) : μ(L) = 0}` and whether it vanishes.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub l_ann: Subspace,
    pub dense: Verdict,
    /// Outcome of the `A(Q)` variant, computed when `Ann(Q) = 0`.
    pub a_q_variant: Option<Truth>,
}

pub fn hom_annihilator_dense(e: &Extension) -> Result<DensityReport> {
    let q = e.ambient();
    let m = multiplication_algebra(q);
    let zero = Subspace::zero(q.field(), q.dim());
    let l_ann = m.stabilizing(e.sub(), &zero);
    let dense = match l_ann.basis().first() {
        None => Verdict::holds(Method::Structural),
        Some(v) => Verdict::fails(
            Method::Structural,
            Witness::Operator {
                matrix: unflat(q.field(), q.dim(), v),
            },
        ),
    };
    let mut a_q_variant = None;
    if q.annihilator_unchecked(&q.full_space()).is_zero() {
        let aq = inner_envelope(e, Source::Q);
        let killed = aq.stabilizing(e.sub(), &zero);
        let t = Truth::from_bool(killed.is_zero());
        if t != dense.value {
            return Err(Error::StructureViolation(
                "density via M(Q) and via A(Q) disagree although Ann(Q) = 0".into(),
            ));
        }
        a_q_variant = Some(t);
    }
    Ok(DensityReport {
        l_ann,
        dense,
        a_q_variant,
    })
}

/// `M(Q)(I)`: the smallest subspace of `Q` containing `I` and stable under
/// every `ad_q`.
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub span: Subspace,
    pub hom_ideal: Verdict,
}

pub fn operator_orbit(e: &Extension, i: &Subspace) -> Result<Orbit> {
    require_ideal(e.sub_algebra(), i)?;
    let q = e.ambient();
    let maps: Vec<Matrix> = (0..q.dim()).map(|k| q.ad_unchecked(&q.unit(k))).collect();
    let span = Subspace::closure(q.field(), q.dim(), e.lift(i).basis(), &maps);
    if !span.is_invariant_under(q.alpha()) {
        return Err(Error::StructureViolation(
            "orbit is not stable under the twist".into(),
        ));
    }
    let hom_ideal = q.ideal_verdict(&span);
    Ok(Orbit { span, hom_ideal })
}

/// `L` and `M(L)` are both semiprime.
pub fn is_multiplicatively_semiprime(
    l: &HomLieAlgebra,
    mode: Mode,
    limits: &Limits,
) -> Result<Verdict> {
    l.ensure_verified()?;
    let lie = props::is_semiprime(l, mode, limits)?;
    if lie.is_false() {
        return Ok(lie.with_note("L is not semiprime"));
    }
    let assoc_mode = match mode {
        Mode::Witness => Mode::Witness,
        Mode::Exhaustive => Mode::Exhaustive,
        _ => Mode::Auto,
    };
    let m = multiplication_algebra(l);
    let ml = is_assoc_semiprime(&m, assoc_mode, limits)?;
    if ml.is_false() {
        return Ok(ml.with_note("M(L) is not semiprime"));
    }
    if ml.is_true() {
        // A(L) is an ideal of M(L), so it inherits semiprimeness
        let a = envelope(l);
        if is_assoc_semiprime(&a, assoc_mode, limits)?.is_false() {
            return Err(Error::StructureViolation(
                "M(L) semiprime but A(L) is not".into(),
            ));
        }
    }
    Ok(match (lie.value, ml.value) {
        (Truth::True, Truth::True) => {
            Verdict::holds(lie.method).with_note(format!("M(L): {}", ml.method.name()))
        }
        _ => Verdict::unknown(lie.method, "one of the two conditions is undecided"),
    })
}
