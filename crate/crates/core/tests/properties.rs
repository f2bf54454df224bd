use std::collections::HashSet;

use proptest::prelude::*;

use homquot::corpus::{generate, GeneratorSpec, Strategy};
use homquot::exalg::projective::projective_count;
use homquot::exalg::{normalize, FieldSpec, Matrix, ProjectiveSpace, Scalar, Subspace};
use homquot::homlie::HomLieAlgebra;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 2_147_483_647];

fn field(k: usize) -> FieldSpec {
    if k < PRIMES.len() {
        FieldSpec::prime(PRIMES[k]).unwrap()
    } else {
        FieldSpec::rational()
    }
}

/// A scalar from a raw draw; rationals get small numerators and denominators.
fn scalar(f: FieldSpec, raw: (i64, i64)) -> Scalar {
    match f.modulus() {
        Some(p) => f.element((raw.0.rem_euclid(p as i64)) as u32),
        None => f
            .parse(&format!("{}/{}", raw.0 % 40, 1 + raw.1.rem_euclid(9)))
            .unwrap(),
    }
}

fn raw() -> impl proptest::strategy::Strategy<Value = (i64, i64)> {
    (any::<i64>(), any::<i64>())
}

fn matrix(f: FieldSpec, r: usize, c: usize, data: &[(i64, i64)]) -> Matrix {
    // every third entry zero so that low ranks show up
    let v = (0..r * c)
        .map(|k| {
            if k % 3 == 2 {
                f.zero()
            } else {
                scalar(f, data[k % data.len()])
            }
        })
        .collect();
    Matrix::from_flat(f, r, c, v)
}

fn subspace(f: FieldSpec, n: usize, k: usize, data: &[(i64, i64)]) -> Subspace {
    Subspace::from_vectors(f, n, matrix(f, k, n, data).row_vecs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(k in 0usize..6, a in raw(), b in raw(), c in raw()) {
        let f = field(k);
        let (a, b, c) = (scalar(f, a), scalar(f, b), scalar(f, c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        match a.inv() {
            Some(i) => prop_assert!((&a * &i).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }
}

proptest! {
    #[test]
    fn rref_is_idempotent_and_rank_nullity_holds(
        k in 0usize..6, r in 1usize..6, c in 1usize..6, data in prop::collection::vec(raw(), 1..36)
    ) {
        let f = field(k);
        let m = matrix(f, r, c, &data);
        let e = m.rref();
        prop_assert_eq!(e.rref(), e.clone());
        prop_assert_eq!(m.rank(), e.rank());
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.dim(), c);
        for v in ker.basis() {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.image().dim(), m.rank());
    }

    #[test]
    fn sum_and_intersection_dimensions(
        k in 0usize..6, n in 1usize..6, ka in 0usize..6, kb in 0usize..6, kc in 0usize..6,
        data in prop::collection::vec(raw(), 1..36)
    ) {
        let f = field(k);
        let a = subspace(f, n, ka, &data);
        let mut shifted = data.clone();
        shifted.rotate_left(data.len() / 2);
        let b = subspace(f, n, kb, &shifted);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
        prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
        // modular law: a ⊆ w  ⇒  (a + b) ∩ w = a + (b ∩ w)
        shifted.reverse();
        let w = a.sum(&subspace(f, n, kc, &shifted)).unwrap();
        prop_assert_eq!(s.intersect(&w).unwrap(), a.sum(&b.intersect(&w).unwrap()).unwrap());
    }
}

#[test]
fn projective_enumeration_counts() {
    for p in [2u64, 3, 5] {
        for n in 1..=4usize {
            let f = FieldSpec::prime(p).unwrap();
            let space = ProjectiveSpace::new(f, n, 1_000).unwrap();
            let want = (p.pow(n as u32) - 1) / (p - 1);
            assert_eq!(projective_count(p, n), Some(want as u128));
            assert_eq!(space.len() as u64, want);
            let mut seen = HashSet::new();
            for v in space.iter() {
                assert!(v.iter().any(|s| !s.is_zero()));
                assert_eq!(normalize(&v), v);
                assert!(seen.insert(v), "scalar multiples in ({p}, {n})");
            }
        }
    }
}

const STRATEGIES: [Strategy; 5] = [
    Strategy::LieWithIdentityTwist,
    Strategy::LieWithScalarTwist,
    Strategy::LieWithCentroidTwist,
    Strategy::CentralDegenerate,
    Strategy::RejectionSampled,
];

fn spec(s: usize, p: usize, dim: usize, seed: u64) -> GeneratorSpec {
    let strategy = STRATEGIES[s];
    let (p, dim) = if strategy == Strategy::RejectionSampled {
        (2, dim.min(3))
    } else {
        ([2, 3, 5][p], dim)
    };
    GeneratorSpec {
        strategy,
        field: FieldSpec::prime(p).unwrap(),
        dim,
        seed,
        count: 1,
    }
}

fn bracket_identities(l: &HomLieAlgebra) -> Result<(), TestCaseError> {
    let n = l.dim();
    let ad: Vec<Matrix> = (0..n).map(|i| l.ad(&l.unit(i)).unwrap()).collect();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (l.unit(i), l.unit(j));
            let xy = l.bracket_vec(&x, &y);
            // multiplicativity
            let a = l.twist_vec(&xy);
            prop_assert_eq!(&a, &l.bracket_vec(&l.twist_vec(&x), &y));
            prop_assert_eq!(&a, &l.bracket_vec(&x, &l.twist_vec(&y)));
            // operator identity ad_x ad_y = ad_y ad_x + ad_{α[x,y]}
            prop_assert_eq!(ad[i].mul(&ad[j]), ad[j].mul(&ad[i]).add(&l.ad(&a).unwrap()));
            for k in 0..n {
                // ad_x is a derivation of the bracket
                let z = l.unit(k);
                let lhs = ad[i].apply(&l.bracket_vec(&y, &z));
                let r1 = l.bracket_vec(&ad[i].apply(&y), &z);
                let r2 = l.bracket_vec(&y, &ad[i].apply(&z));
                let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(u, v)| u + v).collect();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_algebras_satisfy_the_identities(s in 0usize..5, p in 0usize..3, dim in 1usize..5, seed in any::<u64>()) {
        let sp = spec(s, p, dim, seed);
        let l = generate(&sp).unwrap().remove(0);
        prop_assert!(l.check_axioms().hom_axioms_hold());
        bracket_identities(&l)?;
    }

    #[test]
    fn generation_is_deterministic(s in 0usize..5, p in 0usize..3, dim in 1usize..5, seed in any::<u64>()) {
        let sp = spec(s, p, dim, seed);
        let a: Vec<String> = generate(&sp).unwrap().iter().map(HomLieAlgebra::to_json_string).collect();
        let b: Vec<String> = generate(&sp).unwrap().iter().map(HomLieAlgebra::to_json_string).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn annihilators_of_ideals_are_ideals(
        s in 0usize..5, p in 0usize..3, dim in 1usize..5, seed in any::<u64>(), coeffs in prop::collection::vec(0u32..5, 4)
    ) {
        let l = generate(&spec(s, p, dim, seed)).unwrap().remove(0);
        let f = l.field();
        let x: Vec<Scalar> = (0..l.dim()).map(|i| f.element(coeffs[i] % f.modulus().unwrap())).collect();
        let i = l.ideal_generated(std::slice::from_ref(&x)).unwrap();
        prop_assert!(i.contains(&x));
        prop_assert!(l.is_hom_ideal(&i).unwrap().is_true());
        prop_assert_eq!(l.ideal_generated(i.basis()).unwrap(), i.clone());
        let ann = l.annihilator(&i).unwrap();
        prop_assert!(l.is_hom_ideal(&ann).unwrap().is_true());
    }
}
