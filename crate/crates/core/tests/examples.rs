use homquot::corpus::{abelian, borel_in_sl2, ex2_5, heisenberg, sl2, sl2_sum};
use homquot::envelope::{self, Source};
use homquot::exalg::{FieldSpec, Matrix, Scalar, Subspace};
use homquot::homlie::HomLieAlgebra;
use homquot::maxq;
use homquot::props;
use homquot::quotients::{self, Extension};
use homquot::verdict::{Truth, Witness};
use homquot::{Limits, Mode};

fn q() -> FieldSpec {
    FieldSpec::rational()
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn v(f: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| f.from_i64(x)).collect()
}

fn span(f: FieldSpec, n: usize, rows: &[&[i64]]) -> Subspace {
    Subspace::from_vectors(f, n, rows.iter().map(|r| v(f, r)))
}

fn degenerate() -> HomLieAlgebra {
    ex2_5(q(), q().one(), q().one())
}

#[test]
fn degenerate_four_dim_jacobi_witness() {
    let l = degenerate();
    let r = l.check_axioms();
    assert!(r.hom_axioms_hold());
    assert_eq!(r.classical_jacobi.value, Truth::False);
    match r.classical_jacobi.witness.unwrap() {
        Witness::Axiom { indices, defect } => {
            assert_eq!(indices, vec![1, 2, 3]);
            assert_eq!(defect, v(q(), &[0, -1, 0, 0]));
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn bracket_and_twist_values() {
    let l = degenerate();
    assert_eq!(l.bracket_vec(&l.unit(1), &l.unit(2)), l.unit(1));
    assert_eq!(l.twist_vec(&l.unit(3)), l.unit(0));
    assert!(l.twist_vec(&l.unit(1)).iter().all(Scalar::is_zero));
    assert!(l.ad(&l.unit(1)).unwrap().is_zero());

    let s = sl2(q());
    // basis (e, f, h)
    assert_eq!(s.bracket_vec(&s.unit(2), &s.unit(0)), v(q(), &[2, 0, 0]));
    let ad_h = s.ad(&s.unit(2)).unwrap();
    let diag = Matrix::from_rows(
        q(),
        vec![v(q(), &[2, 0, 0]), v(q(), &[0, -2, 0]), v(q(), &[0, 0, 0])],
    )
    .unwrap();
    assert_eq!(ad_h, diag);
}

#[test]
fn subalgebra_and_ideal_verdicts() {
    let s = sl2(q());
    assert!(s
        .is_hom_subalgebra(&span(q(), 3, &[&[1, 0, 0]]))
        .unwrap()
        .is_true());
    let ef = span(q(), 3, &[&[1, 0, 0], &[0, 1, 0]]);
    let vd = s.is_hom_subalgebra(&ef).unwrap();
    assert!(vd.is_false());
    assert!(s
        .is_hom_ideal(&span(q(), 3, &[&[1, 0, 0]]))
        .unwrap()
        .is_false());
    assert_eq!(s.ideal_generated(&[s.unit(0)]).unwrap(), s.full_space());

    let l = degenerate();
    assert!(l
        .is_hom_ideal(&span(q(), 4, &[&[1, 0, 0, 0]]))
        .unwrap()
        .is_true());
    assert_eq!(
        l.ideal_generated(&[l.unit(1)]).unwrap(),
        span(q(), 4, &[&[0, 1, 0, 0]])
    );
}

#[test]
fn annihilator_facts() {
    let l = degenerate();
    assert_eq!(l.annihilator(&l.full_space()).unwrap(), l.full_space());
    assert_eq!(l.annihilator(&l.zero_space()).unwrap(), l.full_space());
    let s = sl2(q());
    assert!(s.annihilator(&s.full_space()).unwrap().is_zero());
}

#[test]
fn ideal_lattice_small_cases() {
    let lim = Limits::default();
    let a = abelian(gf(2), 2);
    assert_eq!(props::ideal_lattice(&a, &lim).unwrap().len(), 5);
    let s = sl2(gf(5));
    let lat = props::ideal_lattice(&s, &lim).unwrap();
    assert_eq!(lat.ideals, vec![s.zero_space(), s.full_space()]);
}

#[test]
fn predicates_on_named_algebras() {
    let lim = Limits::default();
    let s = sl2(gf(5));
    for m in [Mode::Exhaustive, Mode::Auto] {
        assert!(props::is_nondegenerate(&s, m, &lim).unwrap().is_true());
        assert!(props::is_semiprime(&s, m, &lim).unwrap().is_true());
        assert!(props::is_prime(&s, m, &lim).unwrap().is_true());
    }
    let ss = sl2_sum(gf(5));
    assert!(props::is_semiprime(&ss, Mode::Exhaustive, &lim)
        .unwrap()
        .is_true());
    let pr = props::is_prime(&ss, Mode::Exhaustive, &lim).unwrap();
    assert!(pr.is_false());
    match pr.witness.unwrap() {
        Witness::IdealPair { i, j, .. } => {
            assert_eq!(i.len() + j.len(), 6);
        }
        w => panic!("unexpected witness {w:?}"),
    }

    let l = degenerate();
    let e1 = l.unit(0);
    let nd = props::is_nondegenerate(&l, Mode::Auto, &lim).unwrap();
    assert!(nd.is_false());
    assert_eq!(nd.witness, Some(Witness::Vector { v: e1.clone() }));
    let sp = props::is_semiprime(&l, Mode::Auto, &lim).unwrap();
    assert!(sp.is_false());
    assert!(props::is_prime(&l, Mode::Auto, &lim).unwrap().is_false());

    let a = abelian(gf(3), 3);
    let nd = props::is_nondegenerate(&a, Mode::Exhaustive, &lim).unwrap();
    assert_eq!(nd.witness, Some(Witness::Vector { v: a.unit(0) }));
}

#[test]
fn rational_modes() {
    let lim = Limits::default();
    let s = sl2(q());
    assert!(props::is_semiprime(&s, Mode::Exhaustive, &lim).is_err());
    assert!(props::is_semiprime(&s, Mode::Auto, &lim).unwrap().is_true());
    assert!(props::has_trivial_lattice(&s).unwrap());
}

#[test]
fn minimum_essential_and_powers() {
    let lim = Limits::default();
    let s = sl2(gf(5));
    assert_eq!(
        props::minimum_essential_ideal(&s, &lim).unwrap(),
        s.full_space()
    );
    assert_eq!(
        props::ideal_power(&s, &s.full_space(), 2).unwrap(),
        s.full_space()
    );
    let l = degenerate();
    let i = span(q(), 4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
    assert!(props::ideal_power(&l, &i, 2).unwrap().is_zero());
    let a = abelian(gf(2), 2);
    assert_eq!(
        props::minimum_essential_ideal(&a, &lim).unwrap(),
        a.full_space()
    );
}

#[test]
fn borel_denominators_and_witness() {
    let lim = Limits::default();
    let e = borel_in_sl2(gf(5));
    let f5 = gf(5);
    // L-coordinates follow the RREF basis (e, h)
    let d = e.denominator_ideal(&v(f5, &[0, 1, 0])).unwrap();
    assert_eq!(d.colon_in_q, span(f5, 3, &[&[1, 0, 0]]));
    assert_eq!(e.lq_span(&v(f5, &[0, 1, 0])).unwrap().dim(), 3);
    assert_eq!(e.lift(&e.uniform_denominator()), span(f5, 3, &[&[1, 0, 0]]));

    let qv = quotients::is_quotient_algebra(&e, Mode::Exhaustive, &lim).unwrap();
    assert!(qv.is_false());
    assert_eq!(
        qv.witness,
        Some(Witness::Pair {
            p: v(f5, &[1, 0, 0]),
            q: v(f5, &[0, 1, 0])
        })
    );
    assert!(quotients::is_ideally_absorbed(&e, Mode::Exhaustive, &lim)
        .unwrap()
        .is_false());
    // L has the abelian ideal span{e}, so the derived criterion cannot decide
    assert_eq!(
        quotients::quotient_derived(&e, &lim).unwrap().value,
        Truth::Unknown
    );
    assert!(
        quotients::is_weak_quotient_algebra(&e, Mode::Exhaustive, &lim)
            .unwrap()
            .is_true()
    );
}

#[test]
fn trivial_extension_predicates() {
    let lim = Limits::default();
    let e = Extension::trivial(sl2(gf(5))).unwrap();
    assert!(quotients::is_quotient_algebra(&e, Mode::Exhaustive, &lim)
        .unwrap()
        .is_true());
    assert!(
        quotients::is_weak_quotient_algebra(&e, Mode::Exhaustive, &lim)
            .unwrap()
            .is_true()
    );
    assert!(quotients::is_ideally_absorbed(&e, Mode::Exhaustive, &lim)
        .unwrap()
        .is_true());
    let d = Extension::trivial(degenerate()).unwrap();
    let w = quotients::is_weak_quotient_algebra(&d, Mode::Auto, &lim).unwrap();
    assert!(w.is_false());
    assert_eq!(
        w.witness,
        Some(Witness::Vector {
            v: d.ambient().unit(0)
        })
    );
    let a = Extension::trivial(abelian(gf(2), 2)).unwrap();
    assert!(quotients::is_ideally_absorbed(&a, Mode::Exhaustive, &lim)
        .unwrap()
        .is_false());
}

#[test]
fn invalid_extension_rejected() {
    let s = sl2(q());
    assert!(Extension::new(s, &[v(q(), &[1, 0, 0]), v(q(), &[0, 1, 0])]).is_err());
}

#[test]
fn envelopes() {
    let s = sl2(q());
    let e = Extension::trivial(s.clone()).unwrap();
    let a = envelope::inner_envelope(&e, Source::Q);
    assert_eq!(a.dim(), 9);
    assert!(a.contains_identity());
    assert!(envelope::inner_envelope(&e, Source::L).is_subalgebra_of(&a));
    let l = degenerate();
    assert!(envelope::envelope(&l).is_zero());
    assert_eq!(envelope::multiplication_algebra(&l).dim(), 1);
    let a0 = envelope::invariant_subalgebra_a0(&e).unwrap();
    assert_eq!(a0.span(), a.span());

    let b = borel_in_sl2(q());
    let a0 = envelope::invariant_subalgebra_a0(&b).unwrap();
    assert!(a0.dim() < 9);
    let ad_e = b.ambient().ad(&b.ambient().unit(0)).unwrap();
    let ad_h = b.ambient().ad(&b.ambient().unit(2)).unwrap();
    assert!(a0.contains(&ad_e) && a0.contains(&ad_h));
}

#[test]
fn associative_semiprime() {
    let lim = Limits::default();
    let f = q();
    let full = envelope::operator_closure_in(f, 2, &[Matrix::identity(f, 2)], true);
    let mut gens = Vec::new();
    for r in 0..2 {
        for c in 0..2 {
            let mut m = Matrix::zeros(f, 2, 2);
            m.set(r, c, f.one());
            gens.push(m);
        }
    }
    let m2 = envelope::operator_closure(&gens, false);
    assert_eq!(m2.dim(), 4);
    assert!(envelope::is_assoc_semiprime(&m2, Mode::Auto, &lim)
        .unwrap()
        .is_true());
    assert!(envelope::is_assoc_semiprime(&full, Mode::Auto, &lim)
        .unwrap()
        .is_true());
    let n = gens[1].clone();
    let nil = envelope::operator_closure(std::slice::from_ref(&n), false);
    let vd = envelope::is_assoc_semiprime(&nil, Mode::Auto, &lim).unwrap();
    assert!(vd.is_false());
    assert_eq!(vd.witness, Some(Witness::Operator { matrix: n.clone() }));
    let g5 = gf(5);
    let n5 = Matrix::from_rows(g5, vec![v(g5, &[0, 1]), v(g5, &[0, 0])]).unwrap();
    let nil5 = envelope::operator_closure(std::slice::from_ref(&n5), false);
    let vd = envelope::is_assoc_semiprime(&nil5, Mode::Exhaustive, &lim).unwrap();
    assert_eq!(vd.witness, Some(Witness::Operator { matrix: n5 }));
    let zero = envelope::OperatorAlgebra::zero(f, 2);
    assert!(envelope::is_assoc_semiprime(&zero, Mode::Auto, &lim)
        .unwrap()
        .is_true());
}

#[test]
fn multiplicative_semiprimeness_and_density() {
    let lim = Limits::default();
    assert!(
        envelope::is_multiplicatively_semiprime(&sl2(q()), Mode::Auto, &lim)
            .unwrap()
            .is_true()
    );
    assert!(
        envelope::is_multiplicatively_semiprime(&sl2(gf(5)), Mode::Auto, &lim)
            .unwrap()
            .is_true()
    );
    assert!(
        envelope::is_multiplicatively_semiprime(&abelian(gf(3), 2), Mode::Auto, &lim)
            .unwrap()
            .is_false()
    );
    assert!(
        envelope::is_multiplicatively_semiprime(&degenerate(), Mode::Auto, &lim)
            .unwrap()
            .is_false()
    );

    let e = Extension::trivial(sl2(q())).unwrap();
    assert!(envelope::hom_annihilator_dense(&e).unwrap().dense.is_true());
    let d = Extension::trivial(degenerate()).unwrap();
    assert!(envelope::hom_annihilator_dense(&d).unwrap().dense.is_true());
    let z = Extension::new(sl2(q()), &[]).unwrap();
    assert!(envelope::hom_annihilator_dense(&z)
        .unwrap()
        .dense
        .is_false());

    let i = span(q(), 4, &[&[0, 1, 0, 0]]);
    assert_eq!(envelope::operator_orbit(&d, &i).unwrap().span, i);
}

#[test]
fn left_quotient_examples() {
    let lim = Limits::default();
    let f = gf(3);
    let e = Extension::trivial(sl2(f)).unwrap();
    let a = envelope::inner_envelope(&e, Source::Q);
    assert!(envelope::is_left_quotient_algebra(&a, &a, Mode::Auto, &lim)
        .unwrap()
        .is_true());
    let zero = envelope::OperatorAlgebra::zero(f, 3);
    assert!(
        envelope::is_left_quotient_algebra(&zero, &a, Mode::Auto, &lim)
            .unwrap()
            .is_false()
    );
}

#[test]
fn maximal_quotients_of_sl2() {
    let lim = Limits::default();
    for f in [gf(5), q()] {
        let s = sl2(f);
        let mq = maxq::build_maximal_quotients(&s, &lim).unwrap();
        assert_eq!(mq.dim(), 3);
        assert!(mq.phi_is_bijective());
        assert!(mq.carrier.check_axioms().hom_axioms_hold());
    }
    let ss = sl2_sum(gf(5));
    let mq = maxq::build_maximal_quotients(&ss, &lim).unwrap();
    assert_eq!(mq.dim(), 6);
    assert!(maxq::build_maximal_quotients(&abelian(gf(3), 2), &lim).is_err());
}

#[test]
fn partial_derivations() {
    let s = sl2(q());
    let der = maxq::pder_solve(&s, &s.full_space(), 0).unwrap();
    assert_eq!(der.len(), 3);
    for d in &der {
        assert!(d.is_valid(&s));
    }
    let a = abelian(q(), 2);
    assert_eq!(maxq::pder_solve(&a, &a.full_space(), 0).unwrap().len(), 4);
    let h = heisenberg(gf(3), Some(Matrix::identity(gf(3), 3)));
    let ad = maxq::PartialDerivation {
        domain: h.full_space(),
        matrix: h.ad(&h.unit(0)).unwrap(),
        twist_power: 0,
    };
    assert!(ad.is_valid(&h));
}

#[test]
fn uniform_left_colon_is_sound() {
    // wherever the scan finishes, a derived True must agree with it
    let lim = Limits::default();
    let mut derived_true = 0;
    for e in homquot::corpus::shipped_corpus()
        .unwrap()
        .into_iter()
        .take(120)
    {
        let ext = match e.instance {
            homquot::corpus::Instance::Extension(x) => x,
            homquot::corpus::Instance::Algebra(l) => Extension::trivial(l).unwrap(),
        };
        let a0 = envelope::invariant_subalgebra_a0(&ext).unwrap();
        let aq = envelope::inner_envelope(&ext, Source::Q);
        let d = envelope::is_left_quotient_algebra(&a0, &aq, Mode::Derived, &lim).unwrap();
        if d.value != Truth::True || !ext.ambient().field().is_finite() {
            continue;
        }
        derived_true += 1;
        let x = envelope::is_left_quotient_algebra(&a0, &aq, Mode::Exhaustive, &lim).unwrap();
        assert!(x.value != Truth::False, "{}", e.meta.name);
    }
    assert!(derived_true > 0);

    let s = Extension::trivial(sl2(q())).unwrap();
    let a = envelope::inner_envelope(&s, Source::Q);
    let v = envelope::is_left_quotient_algebra(&a, &a, Mode::Auto, &lim).unwrap();
    assert!(v.is_true());
}
