//! Named instances with the verdicts they are known to have.

use serde::{Deserialize, Serialize};

use super::lie::base_lie_algebra;
use super::store::Instance;
use crate::exalg::{FieldSpec, Matrix, Scalar};
use crate::homlie::HomLieAlgebra;
use crate::quotients::Extension;

/// Known answers, checked by the acceptance tests. Absent means "not asserted".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom_axioms: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical_jacobi: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semiprime: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ann_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak_quotient: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideally_absorbed: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Curated {
    pub name: &'static str,
    pub instance: Instance,
    pub expected: Expected,
    pub tags: Vec<&'static str>,
}

fn verified(l: HomLieAlgebra) -> HomLieAlgebra {
    l.verify().expect("curated instance satisfies the axioms")
}

/// `[e2,e3] = [e2,e4] = e2`, `[e3,e4] = e3`, `α(e1) = a e1`, `α(e4) = b e1`,
/// `α(e2) = α(e3) = 0`.
pub fn ex2_5(f: FieldSpec, a: Scalar, b: Scalar) -> HomLieAlgebra {
    let u = |k: usize| f.unit(4, k);
    let entries = vec![(1, 2, u(1)), (1, 3, u(1)), (2, 3, u(2))];
    let mut alpha = Matrix::zeros(f, 4, 4);
    alpha.set(0, 0, a);
    alpha.set(0, 3, b);
    verified(HomLieAlgebra::from_structure(f, 4, &entries, alpha).expect("well-formed"))
}

pub fn abelian(f: FieldSpec, n: usize) -> HomLieAlgebra {
    verified(base_lie_algebra(&format!("abelian{n}"), f, None).expect("abelian"))
}

/// Basis `(e, f, h)` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`, `α = id`.
pub fn sl2(f: FieldSpec) -> HomLieAlgebra {
    verified(base_lie_algebra("sl2", f, None).expect("sl2"))
}

pub fn sl2_sum(f: FieldSpec) -> HomLieAlgebra {
    let s = sl2(f);
    s.direct_sum(&s)
        .expect("same field")
        .verify()
        .expect("sum of Hom-Lie algebras")
}

/// `[x,y] = z` with the given twist; `α = 0` when `alpha` is `None`.
pub fn heisenberg(f: FieldSpec, alpha: Option<Matrix>) -> HomLieAlgebra {
    let h = base_lie_algebra("heisenberg", f, None).expect("heisenberg");
    verified(h.with_alpha(alpha.unwrap_or_else(|| Matrix::zeros(f, 3, 3))))
}

/// `span{e, h} ⊆ sl₂`.
pub fn borel_in_sl2(f: FieldSpec) -> Extension {
    let q = sl2(f);
    let basis = vec![q.unit(0), q.unit(2)];
    Extension::new(q, &basis).expect("Borel subalgebra")
}

fn t(b: bool) -> Option<bool> {
    Some(b)
}

/// The shipped named instances.
pub fn curated() -> Vec<Curated> {
    let q = FieldSpec::rational();
    let gf3 = FieldSpec::prime(3).expect("prime");
    let gf5 = FieldSpec::prime(5).expect("prime");
    vec![
        Curated {
            name: "ex2_5",
            instance: Instance::Algebra(ex2_5(q, q.one(), q.one())),
            expected: Expected {
                hom_axioms: t(true),
                classical_jacobi: t(false),
                nondegenerate: t(false),
                semiprime: t(false),
                prime: t(false),
                ann_dim: Some(4),
                ..Expected::default()
            },
            tags: vec!["negative-control"],
        },
        Curated {
            name: "abelian_3",
            instance: Instance::Algebra(abelian(gf3, 3)),
            expected: Expected {
                hom_axioms: t(true),
                classical_jacobi: t(true),
                nondegenerate: t(false),
                semiprime: t(false),
                prime: t(false),
                ann_dim: Some(3),
                ..Expected::default()
            },
            tags: vec!["negative-control"],
        },
        Curated {
            name: "sl2_Q",
            instance: Instance::Algebra(sl2(q)),
            expected: Expected {
                hom_axioms: t(true),
                classical_jacobi: t(true),
                semiprime: t(true),
                ann_dim: Some(0),
                ..Expected::default()
            },
            tags: vec![],
        },
        Curated {
            name: "sl2_gf5",
            instance: Instance::Algebra(sl2(gf5)),
            expected: Expected {
                hom_axioms: t(true),
                classical_jacobi: t(true),
                nondegenerate: t(true),
                semiprime: t(true),
                prime: t(true),
                ann_dim: Some(0),
                ..Expected::default()
            },
            tags: vec![],
        },
        Curated {
            name: "sl2sl2_gf5",
            instance: Instance::Algebra(sl2_sum(gf5)),
            expected: Expected {
                hom_axioms: t(true),
                nondegenerate: t(true),
                semiprime: t(true),
                prime: t(false),
                ann_dim: Some(0),
                ..Expected::default()
            },
            tags: vec![],
        },
        Curated {
            name: "borel_in_sl2",
            instance: Instance::Extension(borel_in_sl2(gf5)),
            expected: Expected {
                weak_quotient: t(true),
                quotient: t(false),
                ideally_absorbed: t(false),
                ..Expected::default()
            },
            tags: vec![],
        },
        Curated {
            name: "heisenberg_alpha0",
            instance: Instance::Algebra(heisenberg(gf3, None)),
            expected: Expected {
                hom_axioms: t(true),
                classical_jacobi: t(true),
                semiprime: t(false),
                ann_dim: Some(3),
                ..Expected::default()
            },
            tags: vec!["negative-control"],
        },
    ]
}
