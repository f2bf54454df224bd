//! The property checks. Each one decides its hypotheses with cached verdicts
//! and only then evaluates the conclusion.

use serde_json::{json, Value};

use super::{Ctx, Outcome, PropertyCheck, Shape};
use crate::config::Mode;
use crate::envelope::{self, unflat, OperatorAlgebra, Side};
use crate::error::Result;
use crate::exalg::{Matrix, Scalar, Subspace};
use crate::maxq::{self, MaxQuotients};
use crate::props;
use crate::quotients::{self, Extension};
use crate::verdict::{Truth, Verdict};

pub(super) static REGISTRY: &[PropertyCheck] = &[
    PropertyCheck { id: "R2.9", anchor: "L nondegenerate ⇒ L semiprime ⇒ Ann(L) = {0}", shape: Shape::Algebra, run: r2_9 },
    PropertyCheck { id: "P2.10", anchor: "I is essential if and only if Ann_L(I) = {0}", shape: Shape::Algebra, run: p2_10 },
    PropertyCheck { id: "P2.11", anchor: "L is prime if and only if for every nonzero Hom-ideal I of L, Ann_L(I) = {0}", shape: Shape::Algebra, run: p2_11 },
    PropertyCheck { id: "P3.1", anchor: "it's maximal among the Hom-ideals I of L such that [I, α(q)] ⊆ L", shape: Shape::ExtensionIdeal, run: p3_1 },
    PropertyCheck { id: "P3.3", anchor: "then Ann_Q(L) = Ann(L) = {0}", shape: Shape::Extension, run: p3_3 },
    PropertyCheck { id: "P3.6", anchor: "If L is semiprime(prime), so is Q", shape: Shape::Extension, run: p3_6 },
    PropertyCheck { id: "P3.8", anchor: "(L : q) is an essential Hom-ideal of L", shape: Shape::Extension, run: p3_8 },
    PropertyCheck { id: "L3.9", anchor: "there is no nonzero element x in Q such that [α(x), I] = {0}", shape: Shape::ExtensionIdeal, run: l3_9 },
    PropertyCheck { id: "T3.10", anchor: "if and only if Q is ideally absorbed into L", shape: Shape::Extension, run: t3_10 },
    PropertyCheck { id: "P3.11", anchor: "Ann_L(I) = {0} implies Ann_Q(I) = {0}", shape: Shape::ExtensionIdeal, run: p3_11 },
    PropertyCheck { id: "P3.13", anchor: "Q is an algebra of quotients of I", shape: Shape::ExtensionIdeal, run: p3_13 },
    PropertyCheck { id: "T4.4", anchor: "Then Q, with these operations, is a Hom-Lie algebra", shape: Shape::Algebra, run: t4_4 },
    PropertyCheck { id: "N4.3", anchor: "classes of partial derivations on essential ideals biject with PDer₀(I_min, L)", shape: Shape::Algebra, run: n4_3 },
    PropertyCheck { id: "L4.5", anchor: "[δ_I, (ad_x)_L] = (ad_{δ(x)})_L", shape: Shape::Algebra, run: l4_5 },
    PropertyCheck { id: "P4.6", anchor: "Q(L) is semiprime and an algebra of quotients of L", shape: Shape::Extension, run: p4_6 },
    PropertyCheck { id: "P4.8", anchor: "there exists an injection between S and Q_m(L) which is the identity on L", shape: Shape::Extension, run: p4_8 },
    PropertyCheck { id: "L5.1", anchor: "Ann_L(I) = {0} if and only if rann_{A(L)}(A_L(I)) = {0}", shape: Shape::Algebra, run: l5_1 },
    PropertyCheck { id: "L5.2", anchor: "ad_x ad_y = ad_{α([x,y])} + ad_y ad_x; left and right generated ideals agree", shape: Shape::ExtensionIdeal, run: l5_2 },
    PropertyCheck { id: "L5.3", anchor: "rann_{A_Q(L)}(Ĩ) = rann_{A_Q(L)}(A_Q(I))", shape: Shape::ExtensionIdeal, run: l5_3 },
    PropertyCheck { id: "L5.4", anchor: "If Ann_L(I) = {0}, then rann_{A(Q)}(A_Q(I)) = {0}", shape: Shape::ExtensionIdeal, run: l5_4 },
    PropertyCheck { id: "L5.5", anchor: "ad_{x1}⋯ad_{xn} ad_y = ad_y ad_{x1}⋯ad_{xn} + Σ ad_{x1}⋯ad_{α([xi, y])}⋯ad_{xn}", shape: Shape::Extension, run: l5_5 },
    PropertyCheck { id: "L5.6", anchor: "μ(Ĩ)^n + (Ĩ)^n μ ⊆ A₀", shape: Shape::ExtensionIdeal, run: l5_6 },
    PropertyCheck { id: "L5.7", anchor: "μ Ĩⁿ ⊆ A₀, Ĩⁿ μ ⊆ A₀ for the ideal power Iⁿ", shape: Shape::ExtensionIdeal, run: l5_7 },
    PropertyCheck { id: "L5.8", anchor: "Any finite intersection of ideals with zero α-annihilator will also have zero α-annihilator", shape: Shape::Algebra, run: l5_8 },
    PropertyCheck { id: "P5.9", anchor: "μĨ ⊆ A₀ and {0} ≠ Ĩμ ⊆ A₀", shape: Shape::ExtensionIdeal, run: p5_9 },
    PropertyCheck { id: "T5.11", anchor: "Then A(Q) is a left quotient algebra of A₀", shape: Shape::Extension, run: t5_11 },
    PropertyCheck { id: "R5.12", anchor: "A₀Ĩ + Ĩ is a left ideal of A₀ with zero right annihilator", shape: Shape::ExtensionIdeal, run: r5_12 },
    PropertyCheck { id: "L6.1", anchor: "If μ(L) = {0} for some μ in A(Q), then μ = 0", shape: Shape::Extension, run: l6_1 },
    PropertyCheck { id: "L6.2", anchor: "If μ(I) = {0}, then μ(M(Q)(I)) = {0}", shape: Shape::ExtensionIdeal, run: l6_2 },
    PropertyCheck { id: "L6.3", anchor: "then [M(Q)(I), α(M(Q)(J))] = {0}", shape: Shape::ExtensionIdeal, run: l6_3 },
    PropertyCheck { id: "L6.4", anchor: "If Q is semiprime, then L is also semiprime", shape: Shape::Extension, run: l6_4 },
    PropertyCheck { id: "L6.5", anchor: "If Q is multiplicatively semiprime, then L is also multiplicatively semiprime", shape: Shape::Extension, run: l6_5 },
    PropertyCheck { id: "P6.7", anchor: "I ⊆ Q is a dense extension for every essential Hom-ideal I of L", shape: Shape::ExtensionIdeal, run: p6_7 },
    PropertyCheck { id: "C6.8", anchor: "lann_{A(Q)}(Ĩ) = {0}", shape: Shape::ExtensionIdeal, run: c6_8 },
];

fn pass() -> Result<Outcome> {
    Ok(Outcome::Pass)
}

fn na(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::NotApplicable {
        reason: reason.into(),
    })
}

fn unknown(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Unknown {
        reason: reason.into(),
    })
}

fn fail(certificate: Value) -> Result<Outcome> {
    Ok(Outcome::Fail { certificate })
}

/// Return early with NA unless the hypothesis verdict is True.
macro_rules! require {
    ($v:expr, $what:literal) => {{
        let v: Verdict = $v;
        match v.value {
            Truth::True => {}
            Truth::False => return na(concat!($what, " is false")),
            Truth::Unknown => return na(concat!($what, " is undecided")),
        }
    }};
}

macro_rules! lattice {
    ($opt:expr) => {
        match $opt {
            Some(l) => l,
            None => return na("ideal lattice out of reach"),
        }
    };
}

fn basis(s: &Subspace) -> Value {
    json!(s.basis_vectors())
}

fn ops(a: &OperatorAlgebra) -> Vec<Matrix> {
    a.basis()
}

fn span_ops(a: &OperatorAlgebra, s: &Subspace) -> Vec<Matrix> {
    s.basis()
        .iter()
        .map(|v| unflat(a.field(), a.ambient_dim(), v))
        .collect()
}

/// First `m` with `mu·m` or `m·mu` outside `a`.
fn escapes(a: &OperatorAlgebra, mu: &Matrix, xs: &[Matrix]) -> Option<(Matrix, &'static str)> {
    for x in xs {
        if !a.contains(&mu.mul(x)) {
            return Some((x.clone(), "mu·x"));
        }
        if !a.contains(&x.mul(mu)) {
            return Some((x.clone(), "x·mu"));
        }
    }
    None
}

fn nonzero(v: &[Scalar]) -> bool {
    v.iter().any(|s| !s.is_zero())
}

fn r2_9(c: &Ctx) -> Result<Outcome> {
    let l = c.q();
    let nd = props::is_nondegenerate(l, Mode::Auto, c.lim())?;
    let sp = c.semiprime_q()?;
    if nd.is_true() && sp.is_false() {
        return fail(json!({ "nondegenerate": nd, "semiprime": sp }));
    }
    if !sp.is_true() {
        if nd.is_true() {
            return unknown("semiprimeness of a nondegenerate algebra is undecided");
        }
        return na(format!(
            "nondegenerate is {}, semiprime is {}",
            nd.value, sp.value
        ));
    }
    let ann = l.annihilator_unchecked(&l.full_space());
    if !ann.is_zero() {
        return fail(json!({ "semiprime": sp, "annihilator": basis(&ann) }));
    }
    pass()
}

fn p2_10(c: &Ctx) -> Result<Outcome> {
    let l = c.q();
    let lat = lattice!(c.lattice_q()?);
    for (i, ess) in &lat {
        if l.annihilator_unchecked(i).is_zero() && !ess {
            return fail(
                json!({ "ideal": basis(i), "claim": "Ann(I) = 0 but I is not essential" }),
            );
        }
    }
    if c.semiprime_q()?.is_true() {
        for (i, ess) in &lat {
            let ann = l.annihilator_unchecked(i);
            if !i.intersect_unchecked(&ann).is_zero() {
                return fail(
                    json!({ "ideal": basis(i), "annihilator": basis(&ann), "claim": "I ∩ Ann(I) = 0" }),
                );
            }
            if *ess != ann.is_zero() {
                return fail(
                    json!({ "ideal": basis(i), "essential": ess, "annihilator": basis(&ann) }),
                );
            }
        }
    }
    pass()
}

fn p2_11(c: &Ctx) -> Result<Outcome> {
    let l = c.q();
    let lat = lattice!(c.lattice_q()?);
    let prime = props::is_prime(l, Mode::Auto, c.lim())?;
    if prime.is_unknown() {
        return unknown("primeness undecided");
    }
    let offender = lat
        .iter()
        .map(|(i, _)| i)
        .find(|i| !i.is_zero() && !l.annihilator_unchecked(i).is_zero());
    match (prime.value, offender) {
        (Truth::True, Some(i)) => fail(
            json!({ "prime": prime, "ideal": basis(i), "annihilator": basis(&l.annihilator_unchecked(i)) }),
        ),
        (Truth::False, None) => {
            fail(json!({ "prime": prime, "claim": "every nonzero ideal has zero annihilator" }))
        }
        _ => pass(),
    }
}

fn p3_1(c: &Ctx) -> Result<Outcome> {
    let (e, l) = (c.e(), c.l());
    let lat = c.lattice_l()?;
    for q in c.q_points() {
        let d = e.denominator_ideal(&q)?;
        if !l.is_ideal(&d.colon) {
            return fail(
                json!({ "q": q, "colon": basis(&d.colon), "claim": "(L:q) is a Hom-ideal" }),
            );
        }
        if !c.absorbs(&q, &d.colon) {
            return fail(json!({ "q": q, "colon": basis(&d.colon), "claim": "[(L:q), α(q)] ⊆ L" }));
        }
        if let Some(lat) = &lat {
            for (i, _) in lat {
                if c.absorbs(&q, i) && !i.is_subspace_of(&d.colon) {
                    return fail(
                        json!({ "q": q, "ideal": basis(i), "colon": basis(&d.colon), "claim": "maximality" }),
                    );
                }
            }
        }
    }
    pass()
}

fn p3_3(c: &Ctx) -> Result<Outcome> {
    let l = c.l();
    let ann_l = l.annihilator_unchecked(&l.full_space());
    let mut applied = false;
    if ann_l.is_zero() {
        applied = true;
        let t = Extension::trivial(l.clone())?;
        let v = quotients::is_quotient_algebra(&t, Mode::Auto, c.lim())?;
        match v.value {
            Truth::False => {
                return fail(
                    json!({ "claim": "L is an algebra of quotients of itself", "verdict": v }),
                )
            }
            Truth::Unknown => return unknown("self-quotient verdict undecided"),
            Truth::True => {}
        }
    }
    let qv = c.quotient()?;
    if qv.is_true() {
        applied = true;
        let ann_ql = c.q().annihilator_unchecked(c.e().sub());
        if !ann_ql.is_zero() || !ann_l.is_zero() {
            return fail(json!({ "ann_q_l": basis(&ann_ql), "ann_l": basis(&ann_l) }));
        }
    }
    if !applied {
        return na(format!("Ann(L) ≠ 0 and quotient is {}", qv.value));
    }
    pass()
}

fn p3_6(c: &Ctx) -> Result<Outcome> {
    require!(c.weak()?, "weak quotient");
    let (e, q) = (c.e(), c.q());
    if let Some(lat) = c.lattice_q()? {
        for (p, _) in &lat {
            if p.is_zero() {
                continue;
            }
            let meet = p.intersect_unchecked(e.sub());
            if meet.is_zero() {
                return fail(json!({ "ideal_of_q": basis(p), "claim": "P ∩ L ≠ 0" }));
            }
            if !c.l().is_ideal(&e.restrict(&meet)) {
                return fail(
                    json!({ "ideal_of_q": basis(p), "claim": "P ∩ L is a Hom-ideal of L" }),
                );
            }
        }
    }
    for (what, on_l, on_q) in [
        ("semiprime", c.semiprime_l()?, Some(c.semiprime_q()?)),
        ("prime", props::is_prime(c.l(), Mode::Auto, c.lim())?, None),
    ] {
        if !on_l.is_true() {
            continue;
        }
        let on_q = match on_q {
            Some(v) => v,
            None => props::is_prime(q, Mode::Auto, c.lim())?,
        };
        match on_q.value {
            Truth::False => return fail(json!({ "property": what, "on_l": on_l, "on_q": on_q })),
            Truth::Unknown => return unknown(format!("{what} on Q undecided")),
            Truth::True => {}
        }
    }
    pass()
}

fn p3_8(c: &Ctx) -> Result<Outcome> {
    let qv = c.quotient()?;
    let ab = quotients::is_ideally_absorbed(c.e(), Mode::Auto, c.lim())?;
    if !qv.is_true() && !ab.is_true() {
        return na(format!(
            "quotient is {}, ideally absorbed is {}",
            qv.value, ab.value
        ));
    }
    let l = c.l();
    for q in c.q_points() {
        let colon = c.e().denominator_ideal(&q)?.colon;
        let ann = l.annihilator_unchecked(&colon);
        if !ann.is_zero() {
            return fail(json!({ "q": q, "colon": basis(&colon), "annihilator": basis(&ann) }));
        }
        let ess = props::is_essential(l, &colon, Mode::Auto, c.lim())?;
        match ess.value {
            Truth::False => {
                return fail(json!({ "q": q, "colon": basis(&colon), "essential": ess }))
            }
            Truth::Unknown => return unknown("essentiality of (L:q) undecided"),
            Truth::True => {}
        }
    }
    pass()
}

/// `{x ∈ Q : [α(x), I] = 0}` for `I` in L-coordinates.
fn twisted_kernel(c: &Ctx, i: &Subspace) -> Subspace {
    let q = c.q();
    let parts: Vec<Matrix> = i
        .basis()
        .iter()
        .map(|y| q.right_mult(&c.e().from_sub_coords(y)).mul(q.alpha()))
        .collect();
    if parts.is_empty() {
        return q.full_space();
    }
    Matrix::vstack(q.field(), q.dim(), &parts).kernel()
}

fn zero_ann_ideals(c: &Ctx) -> Result<Option<Vec<Subspace>>> {
    let l = c.l();
    Ok(c.lattice_l()?.map(|lat| {
        lat.into_iter()
            .map(|(i, _)| i)
            .filter(|i| l.annihilator_unchecked(i).is_zero())
            .collect()
    }))
}

fn l3_9(c: &Ctx) -> Result<Outcome> {
    require!(c.weak()?, "weak quotient");
    for i in lattice!(zero_ann_ideals(c)?) {
        let k = twisted_kernel(c, &i);
        if !k.is_zero() {
            return fail(json!({ "ideal": basis(&i), "kernel": basis(&k) }));
        }
    }
    pass()
}

fn t3_10(c: &Ctx) -> Result<Outcome> {
    let e = c.e();
    let mode = if c.finite() {
        Mode::Exhaustive
    } else {
        Mode::Auto
    };
    let qv = quotients::is_quotient_algebra(e, mode, c.lim())?;
    let ab = quotients::is_ideally_absorbed(e, mode, c.lim())?;
    if qv.is_unknown() || ab.is_unknown() {
        return unknown("one side of the equivalence is undecided");
    }
    if qv.value != ab.value {
        return fail(json!({ "quotient": qv, "absorbed": ab }));
    }
    let d = quotients::quotient_derived(e, c.lim())?;
    if !d.is_unknown() && d.value != qv.value {
        return fail(json!({ "quotient": qv, "derived": d }));
    }
    // weak plus Ann((L:q)) = 0 for every q characterizes quotients
    if c.finite() {
        let weak = quotients::is_weak_quotient_algebra(e, mode, c.lim())?;
        let l = c.l();
        let mut all_zero = true;
        for q in c.q_points() {
            let colon = e.denominator_ideal(&q)?.colon;
            if !l.annihilator_unchecked(&colon).is_zero() {
                all_zero = false;
                break;
            }
        }
        let points_are_all = c.q_points_exhaustive();
        if points_are_all && !weak.is_unknown() {
            let rhs = weak.is_true() && all_zero;
            if rhs != qv.is_true() {
                return fail(
                    json!({ "quotient": qv, "weak": weak, "colon_annihilators_vanish": all_zero }),
                );
            }
        }
    }
    pass()
}

fn p3_11(c: &Ctx) -> Result<Outcome> {
    require!(c.weak()?, "weak quotient");
    let q = c.q();
    for i in lattice!(zero_ann_ideals(c)?) {
        let ann = q.annihilator_unchecked(&c.e().lift(&i));
        if !ann.is_zero() {
            return fail(json!({ "ideal": basis(&i), "ann_q": basis(&ann) }));
        }
    }
    pass()
}

fn p3_13(c: &Ctx) -> Result<Outcome> {
    require!(c.semiprime_l()?, "L semiprime");
    require!(c.quotient()?, "quotient");
    let lat = lattice!(c.lattice_l()?);
    for (i, ess) in &lat {
        if !ess {
            continue;
        }
        let sub = Extension::new(c.q().clone(), c.e().lift(i).basis())?;
        let v = quotients::is_quotient_algebra(&sub, Mode::Auto, c.lim())?;
        match v.value {
            Truth::False => return fail(json!({ "ideal": basis(i), "verdict": v })),
            Truth::Unknown => return unknown("quotient over an essential ideal undecided"),
            Truth::True => {}
        }
    }
    pass()
}

fn build(c: &Ctx) -> Result<std::result::Result<MaxQuotients, Outcome>> {
    match maxq::build_maximal_quotients(c.q(), c.lim()) {
        Ok(m) => Ok(Ok(m)),
        Err(crate::Error::PreconditionFailed(m)) => Ok(Err(Outcome::NotApplicable { reason: m })),
        Err(e) => Err(e),
    }
}

macro_rules! built {
    ($c:expr) => {
        match build($c)? {
            Ok(m) => m,
            Err(o) => return Ok(o),
        }
    };
}

fn t4_4(c: &Ctx) -> Result<Outcome> {
    let mq = built!(c);
    let l = c.q();
    let report = mq.carrier.check_axioms();
    if !report.hom_axioms_hold() {
        return fail(json!({ "carrier_axioms": report }));
    }
    let at = &mq.alpha_tilde;
    let k = mq.carrier.dim();
    for a in 0..k {
        for b in 0..k {
            let (x, y) = (mq.carrier.unit(a), mq.carrier.unit(b));
            let lhs = at.apply(&mq.carrier.bracket_vec(&x, &y));
            let mid = mq.carrier.bracket_vec(&at.apply(&x), &y);
            let rhs = mq.carrier.bracket_vec(&x, &at.apply(&y));
            if lhs != mid || lhs != rhs {
                return fail(json!({ "alpha_tilde_identity": [a, b] }));
            }
        }
    }
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            let (x, y) = (l.unit(i), l.unit(j));
            let lhs = mq.carrier.bracket_vec(&mq.phi_of(&x), &mq.phi_of(&y));
            let rhs = mq.phi_of(&l.twist_vec(&l.bracket_vec(&x, &y)));
            if lhs != rhs {
                return fail(json!({ "phi_morphism": [i, j], "lhs": lhs, "rhs": rhs }));
            }
        }
    }
    if mq.phi.rank() != l.dim() {
        return fail(json!({ "claim": "φ injective" }));
    }
    pass()
}

fn l4_5(c: &Ctx) -> Result<Outcome> {
    let mq = built!(c);
    let k = mq.carrier.dim();
    for (a, delta) in mq.pder_basis.iter().enumerate() {
        let d = mq.carrier.unit(a);
        for x in mq.i_min.basis() {
            let lhs = mq.carrier.bracket_vec(&d, &mq.phi_of(x));
            let dx = delta.apply(x).expect("x lies in the domain");
            let rhs = mq.phi_of(&dx);
            if lhs != rhs {
                return fail(
                    json!({ "delta": a, "x": x, "lhs": lhs, "rhs": rhs, "carrier_dim": k }),
                );
            }
        }
    }
    pass()
}

fn p4_6(c: &Ctx) -> Result<Outcome> {
    let l = c.l();
    let mq = match maxq::build_maximal_quotients(l, c.lim()) {
        Ok(m) => m,
        Err(crate::Error::PreconditionFailed(m)) => return na(m),
        Err(e) => return Err(e),
    };
    let sp = props::is_semiprime(&mq.carrier, Mode::Auto, c.lim())?;
    if sp.is_false() {
        return fail(json!({ "carrier_semiprime": sp }));
    }
    let ext = mq.as_extension()?;
    let qv = quotients::is_quotient_algebra(&ext, Mode::Auto, c.lim())?;
    if qv.is_false() {
        return fail(json!({ "carrier_is_quotient": qv }));
    }
    let t = Extension::trivial(l.clone())?;
    let psi = maxq::psi_matrix(&t, &mq, c.lim())?;
    if psi != mq.phi {
        return fail(json!({ "claim": "ψ is φ on L" }));
    }
    if c.quotient()?.is_true() {
        maxq::psi_matrix(c.e(), &mq, c.lim())?;
    }
    if sp.is_unknown() || qv.is_unknown() {
        return unknown("carrier semiprimeness or quotient property undecided");
    }
    pass()
}

fn p4_8(c: &Ctx) -> Result<Outcome> {
    let crit = match maxq::check_overalgebra_criterion(c.e(), c.lim()) {
        Ok(v) => v,
        Err(crate::Error::PreconditionFailed(m)) => return na(m),
        Err(e) => return Err(e),
    };
    let qv = c.quotient()?;
    if crit.absorbed.is_unknown() || crit.faithful.is_unknown() || qv.is_unknown() {
        return unknown("criterion or quotient verdict undecided");
    }
    let both = crit.absorbed.is_true() && crit.faithful.is_true();
    if both != qv.is_true() {
        return fail(json!({ "criterion": crit, "quotient": qv }));
    }
    if qv.is_true() {
        let mq = maxq::build_maximal_quotients(c.l(), c.lim())?;
        maxq::psi_matrix(c.e(), &mq, c.lim())?;
    }
    pass()
}

/// Realization oracle: restriction to `I_min` identifies the classes of
/// partial derivations on essential lattice ideals with `PDer₀(I_min, L)`.
fn n4_3(c: &Ctx) -> Result<Outcome> {
    let mq = built!(c);
    let l = c.q();
    let lat = lattice!(c.lattice_q()?);
    let p = match l.field().modulus() {
        Some(p) => p as u64,
        None => {
            // only the trivial lattice is available over Q: I_min = L and
            // every class is its own restriction
            return pass();
        }
    };
    let f = l.field();
    let m = mq.dim();
    let zero_min = mq.element(&f.zeros(m));
    // representatives of every class, when few enough to compare pairwise
    let keys_small = (p as u128).checked_pow(m as u32).is_some_and(|n| n <= 81);
    if keys_small {
        let reps: Vec<Vec<Scalar>> = all_vectors(f, m);
        for (a, ka) in reps.iter().enumerate() {
            for kb in &reps[a + 1..] {
                if maxq::class_equal_by_lattice(l, &mq.element(ka), &mq.element(kb), c.lim())? {
                    return fail(
                        json!({ "claim": "distinct restrictions are inequivalent", "a": ka, "b": kb }),
                    );
                }
            }
        }
    }
    for (i, ess) in &lat {
        if !ess {
            continue;
        }
        if !mq.i_min.is_subspace_of(i) {
            return fail(
                json!({ "claim": "I_min lies in every essential ideal", "ideal": basis(i) }),
            );
        }
        let pb = maxq::pder_solve(l, i, 0)?;
        let restrict = |d: &maxq::PartialDerivation| -> Result<Option<Vec<Scalar>>> {
            Ok(mq.coordinates_of(&d.restrict(&mq.i_min)?.images()))
        };
        let total = (p as u128)
            .checked_pow(pb.len() as u32)
            .unwrap_or(u128::MAX);
        let elements: Vec<maxq::PartialDerivation> = if total <= 729 {
            all_vectors(f, pb.len())
                .iter()
                .map(|cs| combine(i, &pb, cs, l.dim()))
                .collect()
        } else {
            pb.clone()
        };
        for d in &elements {
            let key = match restrict(d)? {
                Some(k) => k,
                None => {
                    return fail(
                        json!({ "claim": "restriction lies in PDer₀(I_min)", "ideal": basis(i) }),
                    )
                }
            };
            let rep = mq.element(&key);
            if !maxq::class_equal_by_lattice(l, d, &rep, c.lim())? {
                return fail(
                    json!({ "claim": "δ is equivalent to its restriction", "ideal": basis(i), "key": key }),
                );
            }
            let is_zero = !nonzero(&key);
            if maxq::class_equal_by_lattice(l, d, &zero_min, c.lim())? != is_zero {
                return fail(
                    json!({ "claim": "δ ~ 0 iff δ vanishes on I_min", "ideal": basis(i), "key": key }),
                );
            }
            let fast = maxq::class_equal(l, d, &rep, c.lim())?;
            if !fast.is_true() {
                return fail(
                    json!({ "claim": "fast class test agrees with the lattice", "verdict": fast }),
                );
            }
        }
    }
    pass()
}

fn all_vectors(f: crate::exalg::FieldSpec, n: usize) -> Vec<Vec<Scalar>> {
    let p = f.modulus().expect("finite field");
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for k in 0..p {
                let mut w = v.clone();
                w.push(f.element(k));
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn combine(
    i: &Subspace,
    basis: &[maxq::PartialDerivation],
    cs: &[Scalar],
    n: usize,
) -> maxq::PartialDerivation {
    let f = i.field();
    let mut acc = Matrix::zeros(f, n, i.dim());
    for (c, d) in cs.iter().zip(basis) {
        if !c.is_zero() {
            acc = acc.add(&d.matrix.scale(c));
        }
    }
    maxq::PartialDerivation {
        domain: i.clone(),
        matrix: acc,
        twist_power: 0,
    }
}

fn l5_1(c: &Ctx) -> Result<Outcome> {
    let l = c.q();
    if !l.annihilator_unchecked(&l.full_space()).is_zero() {
        return na("Ann(L) ≠ 0");
    }
    let lat = lattice!(c.lattice_q()?);
    let t = Extension::trivial(l.clone())?;
    let a = envelope::envelope(l);
    for (i, _) in &lat {
        let ai = envelope::envelope_of_ideal(&t, i)?;
        let r = envelope::one_sided_annihilator(&a, ai.span(), Side::Right)?;
        let ann = l.annihilator_unchecked(i);
        if ann.is_zero() != r.is_zero() {
            return fail(
                json!({ "ideal": basis(i), "annihilator": basis(&ann), "rann_dim": r.dim() }),
            );
        }
    }
    pass()
}

/// `ad_x ad_y − ad_y ad_x − ad_{α[x,y]}` on `Q`.
fn commutator_defect(c: &Ctx, x: &[Scalar], y: &[Scalar]) -> Matrix {
    let q = c.q();
    let (ax, ay) = (c.ad(x), c.ad(y));
    let axy = c.ad(&q.twist_vec(&q.bracket_vec(x, y)));
    ax.mul(&ay).sub(&ay.mul(&ax)).sub(&axy)
}

fn l5_2(c: &Ctx) -> Result<Outcome> {
    let q = c.q();
    for i in 0..q.dim() {
        for j in 0..q.dim() {
            let d = commutator_defect(c, &q.unit(i), &q.unit(j));
            if !d.is_zero() {
                return fail(json!({ "pair": [i, j], "defect": d }));
            }
        }
    }
    if let Some(lat) = c.lattice_l()? {
        for (i, _) in &lat {
            envelope::assoc_ideal_generated(c.e(), i)?;
        }
    }
    pass()
}

fn l5_3(c: &Ctx) -> Result<Outcome> {
    let lat = lattice!(c.lattice_l()?);
    let aql = c.aql()?;
    for (i, _) in &lat {
        let tilde = envelope::assoc_ideal_generated(c.e(), i)?;
        let aqi = envelope::envelope_of_ideal(c.e(), i)?;
        for side in [Side::Right, Side::Left] {
            let a = envelope::one_sided_annihilator(&aql, tilde.span(), side)?;
            let b = envelope::one_sided_annihilator(&aql, aqi.span(), side)?;
            if a != b {
                return fail(
                    json!({ "ideal": basis(i), "side": side, "over_tilde": a.dim(), "over_aqi": b.dim() }),
                );
            }
        }
    }
    pass()
}

fn l5_4(c: &Ctx) -> Result<Outcome> {
    require!(c.weak()?, "weak quotient");
    let aq = c.aq()?;
    for i in lattice!(zero_ann_ideals(c)?) {
        let aqi = envelope::envelope_of_ideal(c.e(), &i)?;
        let r = envelope::one_sided_annihilator(&aq, aqi.span(), Side::Right)?;
        if !r.is_zero() {
            return fail(json!({ "ideal": basis(&i), "rann_dim": r.dim() }));
        }
    }
    pass()
}

fn product(ms: &[Matrix], n: usize, f: crate::exalg::FieldSpec) -> Matrix {
    ms.iter().fold(Matrix::identity(f, n), |acc, m| acc.mul(m))
}

fn l5_5(c: &Ctx) -> Result<Outcome> {
    let q = c.q();
    let (f, n) = (q.field(), q.dim());
    let xs: Vec<Vec<Scalar>> = c.e().sub().basis().to_vec();
    // words of length up to 3 in the basis of L, capped for large L
    let max_len = if xs.len() <= 4 { 3 } else { 2 };
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w| (0..xs.len()).map(move |k| [w.as_slice(), &[k]].concat()))
            .collect();
        words.extend(frontier.iter().cloned());
    }
    for w in &words {
        let ads: Vec<Matrix> = w.iter().map(|&k| c.ad(&xs[k])).collect();
        for y in &xs {
            let ay = c.ad(y);
            let lhs = product(&ads, n, f).mul(&ay);
            let mut rhs = ay.mul(&product(&ads, n, f));
            for pos in 0..w.len() {
                let mut swapped = ads.clone();
                swapped[pos] = c.ad(&q.twist_vec(&q.bracket_vec(&xs[w[pos]], y)));
                rhs = rhs.add(&product(&swapped, n, f));
            }
            if lhs != rhs {
                return fail(json!({ "word": w, "y": y }));
            }
        }
    }
    pass()
}

/// Basis vectors `q` of `Q` with `[α(q), I] ⊆ L`.
fn absorbing_basis(c: &Ctx, i: &Subspace) -> Vec<Vec<Scalar>> {
    let q = c.q();
    (0..q.dim())
        .map(|k| q.unit(k))
        .filter(|v| c.absorbs(v, i))
        .collect()
}

/// Monomials `ad_q` and `ad_q ad_q'` over absorbing basis vectors, with their length.
fn monomials(c: &Ctx, qs: &[Vec<Scalar>]) -> Vec<(usize, Matrix)> {
    let ads: Vec<Matrix> = qs.iter().map(|v| c.ad(v)).collect();
    let mut out: Vec<(usize, Matrix)> = ads.iter().map(|a| (1, a.clone())).collect();
    for a in &ads {
        for b in &ads {
            out.push((2, a.mul(b)));
        }
    }
    out
}

fn l5_6(c: &Ctx) -> Result<Outcome> {
    let lat = lattice!(c.lattice_l()?);
    let a0 = c.a0()?;
    for (i, _) in &lat {
        let qs = absorbing_basis(c, i);
        if qs.is_empty() {
            continue;
        }
        let tilde = envelope::assoc_ideal_generated(c.e(), i)?;
        let t1 = ops(&tilde);
        let t2 = span_ops(
            &tilde,
            &OperatorAlgebra::product_span(tilde.field(), tilde.ambient_dim(), &t1, &t1),
        );
        for (len, mu) in monomials(c, &qs) {
            let power = if len == 1 { &t1 } else { &t2 };
            if let Some((x, side)) = escapes(&a0, &mu, power) {
                return fail(
                    json!({ "ideal": basis(i), "length": len, "mu": mu, "x": x, "product": side }),
                );
            }
        }
    }
    pass()
}

fn l5_7(c: &Ctx) -> Result<Outcome> {
    let lat = lattice!(c.lattice_l()?);
    let a0 = c.a0()?;
    let l = c.l();
    for (i, _) in &lat {
        let qs = absorbing_basis(c, i);
        if qs.is_empty() {
            continue;
        }
        let powers = [i.clone(), props::ideal_power(l, i, 2)?];
        let tildes = [
            ops(&envelope::assoc_ideal_generated(c.e(), &powers[0])?),
            ops(&envelope::assoc_ideal_generated(c.e(), &powers[1])?),
        ];
        for (len, mu) in monomials(c, &qs) {
            if let Some((x, side)) = escapes(&a0, &mu, &tildes[len - 1]) {
                return fail(
                    json!({ "ideal": basis(i), "length": len, "mu": mu, "x": x, "product": side }),
                );
            }
        }
    }
    pass()
}

fn l5_8(c: &Ctx) -> Result<Outcome> {
    require!(c.semiprime_q()?, "semiprime");
    let l = c.q();
    let lat = lattice!(c.lattice_q()?);
    let zero: Vec<&Subspace> = lat
        .iter()
        .map(|(i, _)| i)
        .filter(|i| l.annihilator_unchecked(i).is_zero())
        .collect();
    for i in &zero {
        for s in 2..=3 {
            let p = props::ideal_power(l, i, s)?;
            if !l.annihilator_unchecked(&p).is_zero() {
                return fail(json!({ "ideal": basis(i), "power": s }));
            }
        }
    }
    for (a, i) in zero.iter().enumerate() {
        for j in &zero[a + 1..] {
            let m = i.intersect_unchecked(j);
            if !l.annihilator_unchecked(&m).is_zero() {
                return fail(json!({ "ideals": [basis(i), basis(j)] }));
            }
        }
    }
    pass()
}

/// Does `I` witness condition (2) of the associative characterization for `mu`?
fn witnesses(c: &Ctx, a0: &OperatorAlgebra, tilde: &[Matrix], mu: &Matrix, single: bool) -> bool {
    if escapes(a0, mu, tilde).is_some() {
        return false;
    }
    if tilde.iter().all(|t| t.mul(mu).is_zero()) {
        return false;
    }
    if single {
        let ls = c.e().sub().basis();
        let moves = tilde.iter().any(|t| {
            let mt = mu.mul(t);
            ls.iter().any(|v| nonzero(&mt.apply(v)))
        });
        if !moves {
            return false;
        }
    }
    true
}

fn p5_9(c: &Ctx) -> Result<Outcome> {
    require!(c.semiprime_l()?, "L semiprime");
    let qv = c.quotient()?;
    if qv.is_unknown() {
        return unknown("quotient property undecided");
    }
    let (e, l, q) = (c.e(), c.l(), c.q());
    let a0 = c.a0()?;
    let ann_q = q.annihilator_unchecked(&q.full_space());
    if qv.is_true() {
        if !ann_q.is_zero() {
            return fail(json!({ "claim": "Ann(Q) = 0", "ann": basis(&ann_q) }));
        }
        // monomials of length ≤ 2 over basis vectors, with the recipe I = (∩ (L:q_i))^s
        let mut monos: Vec<(Vec<Vec<Scalar>>, Matrix)> = Vec::new();
        for a in 0..q.dim() {
            monos.push((vec![q.unit(a)], c.ad(&q.unit(a))));
        }
        for a in 0..q.dim() {
            for b in 0..q.dim() {
                monos.push((
                    vec![q.unit(a), q.unit(b)],
                    c.ad(&q.unit(a)).mul(&c.ad(&q.unit(b))),
                ));
            }
        }
        for (gens, mu) in monos {
            if mu.is_zero() {
                continue;
            }
            let mut j = l.full_space();
            for g in &gens {
                j = j.intersect_unchecked(&e.denominator_ideal(g)?.colon);
            }
            let i = props::ideal_power(l, &j, gens.len())?;
            if !l.annihilator_unchecked(&i).is_zero() {
                return fail(json!({ "claim": "Ann_L(I) = 0", "generators": gens }));
            }
            let tilde = ops(&envelope::assoc_ideal_generated(e, &i)?);
            if !witnesses(c, &a0, &tilde, &mu, gens.len() == 1) {
                return fail(
                    json!({ "claim": "I witnesses μ", "generators": gens, "ideal": basis(&i) }),
                );
            }
        }
        return pass();
    }
    // converse: if every ad_q has a witness then Q must be a quotient
    if !ann_q.is_zero() {
        return pass();
    }
    let lat = lattice!(c.lattice_l()?);
    let candidates: Vec<(Subspace, Vec<Matrix>)> = lat
        .iter()
        .map(|(i, _)| i)
        .filter(|i| l.annihilator_unchecked(i).is_zero())
        .map(|i| Ok((i.clone(), ops(&envelope::assoc_ideal_generated(e, i)?))))
        .collect::<Result<_>>()?;
    let all_witnessed = c.q_points().iter().all(|v| {
        candidates
            .iter()
            .any(|(_, t)| witnesses(c, &a0, t, &c.ad(v), true))
    });
    if all_witnessed {
        return fail(
            json!({ "claim": "condition (2) on every ad_q forces a quotient", "quotient": qv }),
        );
    }
    pass()
}

fn t5_11(c: &Ctx) -> Result<Outcome> {
    require!(c.semiprime_l()?, "L semiprime");
    require!(c.quotient()?, "quotient");
    let v = envelope::is_left_quotient_algebra(&c.a0()?, &c.aq()?, Mode::Auto, c.lim())?;
    match v.value {
        Truth::True => pass(),
        Truth::False => fail(json!({ "left_quotient": v })),
        Truth::Unknown => unknown("left quotient test undecided"),
    }
}

fn r5_12(c: &Ctx) -> Result<Outcome> {
    require!(c.semiprime_l()?, "L semiprime");
    // the argument runs through the weak-quotient annihilator lemma; without
    // it L = 0 inside any Q ≠ 0 is a counterexample
    require!(c.weak()?, "weak quotient");
    let a0 = c.a0()?;
    let (f, n) = (a0.field(), a0.ambient_dim());
    let a0b = ops(&a0);
    for i in lattice!(zero_ann_ideals(c)?) {
        let tilde = envelope::assoc_ideal_generated(c.e(), &i)?;
        let j = OperatorAlgebra::product_span(f, n, &a0b, &ops(&tilde)).sum_unchecked(tilde.span());
        if !OperatorAlgebra::product_span(f, n, &a0b, &span_ops(&a0, &j)).is_subspace_of(&j) {
            return fail(json!({ "ideal": basis(&i), "claim": "A₀Ĩ + Ĩ is a left ideal" }));
        }
        let r = envelope::one_sided_annihilator(&a0, &j, Side::Right)?;
        if !r.is_zero() {
            return fail(json!({ "ideal": basis(&i), "rann_dim": r.dim() }));
        }
    }
    pass()
}

fn l6_1(c: &Ctx) -> Result<Outcome> {
    let q = c.q();
    if !q.annihilator_unchecked(&q.full_space()).is_zero() {
        return na("Ann(Q) ≠ 0");
    }
    let zero = q.zero_space();
    let m = envelope::multiplication_algebra(q);
    let via_m = m.stabilizing(c.e().sub(), &zero).is_zero();
    let via_a = c.aq()?.stabilizing(c.e().sub(), &zero).is_zero();
    if via_m != via_a {
        return fail(json!({ "dense_via_mq": via_m, "dense_via_aq": via_a }));
    }
    pass()
}

fn l6_2(c: &Ctx) -> Result<Outcome> {
    require!(c.dense()?, "dense");
    let q = c.q();
    let m = envelope::multiplication_algebra(q);
    let lat = lattice!(c.lattice_l()?);
    for (i, _) in &lat {
        let killers = span_ops(&m, &m.stabilizing(&c.e().lift(i), &q.zero_space()));
        let orbit = envelope::operator_orbit(c.e(), i)?.span;
        for mu in &killers {
            if let Some(v) = orbit.basis().iter().find(|v| nonzero(&mu.apply(v))) {
                return fail(json!({ "ideal": basis(i), "mu": mu, "v": v }));
            }
        }
    }
    pass()
}

fn l6_3(c: &Ctx) -> Result<Outcome> {
    require!(c.dense()?, "dense");
    let (l, q) = (c.l(), c.q());
    let lat = lattice!(c.lattice_l()?);
    let orbits: Vec<Subspace> = lat
        .iter()
        .map(|(i, _)| Ok(envelope::operator_orbit(c.e(), i)?.span))
        .collect::<Result<_>>()?;
    for (a, (i, _)) in lat.iter().enumerate() {
        for (b, (j, _)) in lat.iter().enumerate() {
            // [α(x), y] = [x, α(y)] by multiplicativity
            if !l.bracket_span(i, j).is_zero() {
                continue;
            }
            if !q.bracket_span(&orbits[a], &orbits[b]).is_zero() {
                return fail(json!({ "i": basis(i), "j": basis(j) }));
            }
        }
    }
    pass()
}

fn l6_4(c: &Ctx) -> Result<Outcome> {
    require!(c.dense()?, "dense");
    require!(c.semiprime_q()?, "Q semiprime");
    let v = c.semiprime_l()?;
    match v.value {
        Truth::True => pass(),
        Truth::False => fail(json!({ "l_semiprime": v })),
        Truth::Unknown => unknown("semiprimeness of L undecided"),
    }
}

fn l6_5(c: &Ctx) -> Result<Outcome> {
    require!(c.dense()?, "dense");
    require!(c.mult_semiprime_q()?, "Q multiplicatively semiprime");
    let v = envelope::is_multiplicatively_semiprime(c.l(), Mode::Auto, c.lim())?;
    match v.value {
        Truth::True => pass(),
        Truth::False => fail(json!({ "l_mult_semiprime": v })),
        Truth::Unknown => unknown("multiplicative semiprimeness of L undecided"),
    }
}

fn dense_quotient_hypotheses(c: &Ctx) -> Result<Option<Outcome>> {
    for (v, what) in [
        (c.dense()?, "dense"),
        (c.mult_semiprime_q()?, "Q multiplicatively semiprime"),
        (c.quotient()?, "quotient"),
    ] {
        match v.value {
            Truth::True => {}
            Truth::False => {
                return Ok(Some(Outcome::NotApplicable {
                    reason: format!("{what} is false"),
                }))
            }
            Truth::Unknown => {
                return Ok(Some(Outcome::NotApplicable {
                    reason: format!("{what} is undecided"),
                }))
            }
        }
    }
    Ok(None)
}

fn p6_7(c: &Ctx) -> Result<Outcome> {
    if let Some(o) = dense_quotient_hypotheses(c)? {
        return Ok(o);
    }
    let lat = lattice!(c.lattice_l()?);
    for (i, ess) in &lat {
        if !ess {
            continue;
        }
        let sub = Extension::new(c.q().clone(), c.e().lift(i).basis())?;
        let d = envelope::hom_annihilator_dense(&sub)?;
        if !d.dense.is_true() {
            return fail(json!({ "ideal": basis(i), "dense": d.dense }));
        }
    }
    pass()
}

fn c6_8(c: &Ctx) -> Result<Outcome> {
    if let Some(o) = dense_quotient_hypotheses(c)? {
        return Ok(o);
    }
    let lat = lattice!(c.lattice_l()?);
    let aq = c.aq()?;
    for (i, ess) in &lat {
        if !ess {
            continue;
        }
        let tilde = envelope::assoc_ideal_generated(c.e(), i)?;
        let la = envelope::one_sided_annihilator(&aq, tilde.span(), Side::Left)?;
        if !la.is_zero() {
            return fail(json!({ "ideal": basis(i), "lann_dim": la.dim() }));
        }
    }
    pass()
}
