//! Finite-dimensional associative algebras of `n × n` matrices.
//!
//! An [`OperatorAlgebra`] is stored as a canonical subspace of `F^{n²}`
//! (row-major flattening), so equality of algebras is equality of spans.

use serde::Serialize;

use crate::config::{Limits, Mode};
use crate::error::{Error, Result};
use crate::exalg::{
    least_point, scan_first, EchelonBuilder, FieldSpec, Matrix, Scalar, ScanOrder, Subspace,
};
use crate::verdict::{Method, Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorAlgebra {
    field: FieldSpec,
    n: usize,
    span: Subspace,
    generators: Vec<String>,
    unital: bool,
}

#[derive(Serialize)]
struct OperatorAlgebraJson<'a> {
    ambient_dim: usize,
    dim: usize,
    unital: bool,
    generators: &'a [String],
    basis: Vec<Matrix>,
}

impl Serialize for OperatorAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorAlgebraJson {
            ambient_dim: self.n,
            dim: self.dim(),
            unital: self.unital,
            generators: &self.generators,
            basis: self.basis(),
        }
        .serialize(s)
    }
}

pub(crate) fn flat(m: &Matrix) -> Vec<Scalar> {
    m.flat().to_vec()
}

pub(crate) fn unflat(field: FieldSpec, n: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_flat(field, n, n, v.to_vec())
}

impl OperatorAlgebra {
    pub(crate) fn from_span(
        field: FieldSpec,
        n: usize,
        span: Subspace,
        generators: Vec<String>,
        unital: bool,
    ) -> Self {
        debug_assert_eq!(span.ambient_dim(), n * n);
        OperatorAlgebra {
            field,
            n,
            span,
            generators,
            unital,
        }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Self::from_span(field, n, Subspace::zero(field, n * n), Vec::new(), false)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Size `n` of the matrices.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub(crate) fn set_generators(&mut self, g: Vec<String>) {
        self.generators = g;
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// The span as a subspace of `F^{n²}`.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.span
            .basis()
            .iter()
            .map(|v| unflat(self.field, self.n, v))
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.span.contains(m.flat())
    }

    pub fn combine(&self, coords: &[Scalar]) -> Matrix {
        unflat(self.field, self.n, &self.span.combine(coords))
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Matrix::identity(self.field, self.n))
    }

    pub fn is_subalgebra_of(&self, other: &OperatorAlgebra) -> bool {
        self.span.is_subspace_of(&other.span)
    }

    /// Products of basis elements stay in the span.
    pub fn is_product_closed(&self) -> bool {
        let b = self.basis();
        b.iter().all(|x| b.iter().all(|y| self.contains(&x.mul(y))))
    }

    /// `X · Y` spanned over basis pairs, as a subspace of `F^{n²}`.
    pub fn product_span(field: FieldSpec, n: usize, xs: &[Matrix], ys: &[Matrix]) -> Subspace {
        let mut b = EchelonBuilder::new(field, n * n);
        for x in xs {
            for y in ys {
                b.insert(x.mul(y).flat());
            }
        }
        b.finish()
    }

    /// Left multiplication `a ↦ x·a` restricted to the algebra, in coordinates
    /// of the basis, as a map into `F^{n²}`.
    fn mult_map(&self, x: &Matrix, left: bool) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self
            .basis()
            .iter()
            .map(|a| flat(&if left { x.mul(a) } else { a.mul(x) }))
            .collect();
        Matrix::from_cols(self.field, self.n * self.n, &cols)
    }

    /// `{a ∈ A : π(f(a)) = 0}` where each part maps A-coordinates into `F^{n²}`.
    fn solve_in(&self, parts: Vec<Matrix>) -> Subspace {
        if parts.is_empty() {
            return self.span.clone();
        }
        let k = Matrix::vstack(self.field, self.dim(), &parts).kernel();
        Subspace::from_vectors(
            self.field,
            self.n * self.n,
            k.basis().iter().map(|c| self.span.combine(c)),
        )
    }

    /// `rann_A(X) = {a ∈ A : X a = 0}` (side `Right`) or `lann_A(X) = {a : a X = 0}`.
    pub fn annihilator(&self, x: &Subspace, side: Side) -> Subspace {
        let parts = x
            .basis()
            .iter()
            .map(|v| self.mult_map(&unflat(self.field, self.n, v), side == Side::Right))
            .collect();
        self.solve_in(parts)
    }

    /// `{a ∈ A : a·m ∈ A}` as a subspace of `F^{n²}`.
    pub fn left_colon(&self, m: &Matrix) -> Subspace {
        let proj = self.span.quotient_map();
        self.solve_in(vec![proj.mul(&self.mult_map(m, false))])
    }

    /// `{a ∈ A : a(V) ⊆ W}` for subspaces `V, W` of `F^n`.
    pub fn stabilizing(&self, v: &Subspace, w: &Subspace) -> Subspace {
        let proj = w.quotient_map();
        let parts = v
            .basis()
            .iter()
            .map(|b| {
                let cols: Vec<Vec<Scalar>> = self
                    .basis()
                    .iter()
                    .map(|a| proj.apply(&a.apply(b)))
                    .collect();
                Matrix::from_cols(self.field, proj.rows(), &cols)
            })
            .collect();
        self.solve_in(parts)
    }

    /// Sub-span of this algebra as a new algebra value. Product closure is
    /// the caller's responsibility.
    pub(crate) fn with_span(&self, span: Subspace, generators: Vec<String>) -> OperatorAlgebra {
        OperatorAlgebra::from_span(self.field, self.n, span, generators, false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Least algebra containing `gens` (and the identity if `unital`).
///
/// Words are built by left multiplication with the generators, which reaches
/// every product of generators; the resulting span is closed under products.
pub fn operator_closure_in(
    field: FieldSpec,
    n: usize,
    gens: &[Matrix],
    unital: bool,
) -> OperatorAlgebra {
    let mut b = EchelonBuilder::new(field, n * n);
    let mut queue = Vec::new();
    if unital {
        let id = Matrix::identity(field, n);
        if b.insert(id.flat()).is_some() {
            queue.push(id);
        }
    }
    for g in gens {
        assert_eq!((g.rows(), g.cols()), (n, n), "generator shape");
        if b.insert(g.flat()).is_some() {
            queue.push(g.clone());
        }
    }
    while let Some(w) = queue.pop() {
        for g in gens {
            if b.is_full() {
                break;
            }
            let prod = g.mul(&w);
            if let Some(v) = b.insert(prod.flat()) {
                queue.push(unflat(field, n, &v));
            }
        }
    }
    let labels = (0..gens.len()).map(|i| format!("g{i}")).collect();
    OperatorAlgebra::from_span(field, n, b.finish(), labels, unital)
}

/// [`operator_closure_in`] with size and field read off the generators.
pub fn operator_closure(gens: &[Matrix], unital: bool) -> OperatorAlgebra {
    let g = gens.first().expect("at least one generator");
    operator_closure_in(g.field(), g.rows(), gens, unital)
}

/// Radical of the trace form `T(x, y) = tr(L_{xy})` on the unitization
/// `A + F·1`, in `F^{n²}`. In characteristic 0 this is the Jacobson radical.
pub fn trace_radical(a: &OperatorAlgebra) -> Subspace {
    let f = a.field;
    let n = a.n;
    let mut gens = a.basis();
    let id = Matrix::identity(f, n);
    if !a.contains(&id) {
        gens.push(id);
    }
    let m = gens.len();
    let span = Subspace::from_vectors(f, n * n, gens.iter().map(flat));
    // coordinates of b_i b_j in the basis `gens`
    let coords = |x: &Matrix| -> Vec<Scalar> {
        let solve = Matrix::from_cols(f, n * n, &gens.iter().map(flat).collect::<Vec<_>>());
        solve.solve(x.flat()).expect("closed under products")
    };
    let _ = &span;
    let prod: Vec<Vec<Vec<Scalar>>> = (0..m)
        .map(|i| (0..m).map(|j| coords(&gens[i].mul(&gens[j]))).collect())
        .collect();
    // tr(L_{b_k}) = Σ_j coord_j(b_k b_j)
    let tr: Vec<Scalar> = (0..m)
        .map(|k| (0..m).fold(f.zero(), |acc, j| &acc + &prod[k][j][j]))
        .collect();
    let gram: Vec<Vec<Scalar>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = f.zero();
                    for (c, t) in prod[i][j].iter().zip(&tr) {
                        s.add_mul(c, t);
                    }
                    s
                })
                .collect()
        })
        .collect();
    let k = Matrix::from_rows_with_cols(f, m, gram)
        .expect("square")
        .kernel();
    Subspace::from_vectors(
        f,
        n * n,
        k.basis().iter().map(|c| {
            let mut v = f.zeros(n * n);
            for (ci, g) in c.iter().zip(&gens) {
                for (s, t) in v.iter_mut().zip(g.flat()) {
                    s.add_mul(ci, t);
                }
            }
            v
        }),
    )
}

fn offends_assoc(basis: &[Matrix], mu: &Matrix) -> bool {
    basis.iter().all(|b| mu.mul(b).mul(mu).is_zero())
}

/// No nonzero `μ ∈ A` with `μ A μ = 0`.
pub fn is_assoc_semiprime(a: &OperatorAlgebra, mode: Mode, limits: &Limits) -> Result<Verdict> {
    let finite = a.field.is_finite();
    let mode = match (mode, finite) {
        (Mode::Exhaustive, false) => {
            return Err(Error::UnsupportedMode(
                "exhaustive mode needs a finite field".into(),
            ))
        }
        (Mode::Auto, true) => Mode::Exhaustive,
        (Mode::Auto, false) => Mode::Derived,
        (m, _) => m,
    };
    if a.dim() == a.n * a.n && a.n > 0 {
        // the full matrix algebra is simple
        return Ok(Verdict::holds(Method::Structural).with_note("A is the full matrix algebra"));
    }
    let basis = a.basis();
    // Dickson's criterion needs characteristic 0 or above the dimension.
    let trace_ok = match a.field.modulus() {
        None => true,
        Some(p) => p as usize > a.dim() + 1,
    };
    let by_trace = || -> Verdict {
        let rad = trace_radical(a).intersect_unchecked(&a.span);
        match least_point(&rad) {
            None => {
                Verdict::holds(Method::DerivedCriterion).with_note("trace form radical is zero")
            }
            Some(_) => {
                // the radical is a nilpotent ideal J; any μ in its last nonzero
                // power satisfies μAμ ⊆ J^{2k} = 0
                let mut pow = rad.clone();
                loop {
                    let ms: Vec<Matrix> = pow
                        .basis()
                        .iter()
                        .map(|v| unflat(a.field, a.n, v))
                        .collect();
                    let rs: Vec<Matrix> = rad
                        .basis()
                        .iter()
                        .map(|v| unflat(a.field, a.n, v))
                        .collect();
                    let next = OperatorAlgebra::product_span(a.field, a.n, &ms, &rs);
                    if next.is_zero() {
                        break;
                    }
                    pow = next;
                }
                let mu = unflat(a.field, a.n, &least_point(&pow).expect("nonzero power"));
                Verdict::fails(Method::DerivedCriterion, Witness::Operator { matrix: mu })
                    .with_note("nonzero trace form radical")
            }
        }
    };
    match mode {
        Mode::Exhaustive => {
            let order = match ScanOrder::new(&a.span, limits.max_enum) {
                Ok(o) => o,
                Err(e @ Error::EnumerationTooLarge { .. }) => {
                    return Ok(if trace_ok {
                        by_trace().with_note(format!("enumeration skipped: {e}"))
                    } else {
                        Verdict::unknown(Method::Exhaustive, e.to_string())
                    });
                }
                Err(e) => return Err(e),
            };
            let hit = scan_first(&order, |v| {
                let mu = unflat(a.field, a.n, v);
                offends_assoc(&basis, &mu).then_some(mu)
            });
            Ok(match hit {
                Some((_, mu)) => {
                    Verdict::fails(Method::Exhaustive, Witness::Operator { matrix: mu })
                }
                None => Verdict::holds(Method::Exhaustive),
            })
        }
        Mode::Derived if trace_ok => Ok(by_trace()),
        _ => {
            let found = basis.iter().find(|mu| offends_assoc(&basis, mu));
            Ok(match found {
                Some(mu) => {
                    Verdict::fails(Method::WitnessSet, Witness::Operator { matrix: mu.clone() })
                }
                None => Verdict::unknown(Method::WitnessSet, "no basis element refutes"),
            })
        }
    }
}

/// Does every `p ≠ 0`, `q` in `S` admit `x ∈ A` with `xp ≠ 0` and `xq ∈ A`?
///
/// For fixed `q` the admissible `x` form the left ideal `(A : q)`, and the bad
/// `p` form the subspace killed by it, so only `q` is enumerated.
pub fn is_left_quotient_algebra(
    a: &OperatorAlgebra,
    s: &OperatorAlgebra,
    mode: Mode,
    limits: &Limits,
) -> Result<Verdict> {
    if a.n != s.n || a.field != s.field {
        return Err(Error::DimensionMismatch(
            "operator algebras act on different spaces".into(),
        ));
    }
    if !a.is_subalgebra_of(s) {
        return Err(Error::PreconditionFailed("A is not contained in S".into()));
    }
    let (f, n) = (a.field, a.n);
    let s_basis = s.basis();
    // the p in S with colon·p = 0
    let killed = |colon: &Subspace| -> Subspace {
        let parts: Vec<Matrix> = colon
            .basis()
            .iter()
            .map(|x| {
                let x = unflat(f, n, x);
                Matrix::from_cols(
                    f,
                    n * n,
                    &s_basis.iter().map(|p| flat(&x.mul(p))).collect::<Vec<_>>(),
                )
            })
            .collect();
        if parts.is_empty() {
            return s.span.clone();
        }
        let k = Matrix::vstack(f, s.dim(), &parts).kernel();
        Subspace::from_vectors(f, n * n, k.basis().iter().map(|c| s.span.combine(c)))
    };
    let bad_p = |q: &Matrix| killed(&a.left_colon(q));
    // {x ∈ A : xS ⊆ A} lies in every (A : q); if nothing in S is killed by it,
    // no (p, q) can fail
    let uniform_holds = || {
        let proj = a.span.quotient_map();
        let uniform = a.solve_in(
            s_basis
                .iter()
                .map(|q| proj.mul(&a.mult_map(q, false)))
                .collect(),
        );
        killed(&uniform).is_zero()
    };
    let witness = |q: &Matrix, method| {
        least_point(&bad_p(q)).map(|p| {
            Verdict::fails(
                method,
                Witness::OperatorPair {
                    p: unflat(f, n, &p),
                    q: q.clone(),
                },
            )
        })
    };
    let zero = Matrix::zeros(f, n, n);
    let mode = match (mode, f.is_finite()) {
        (Mode::Exhaustive, false) => {
            return Err(Error::UnsupportedMode(
                "exhaustive mode needs a finite field".into(),
            ))
        }
        (Mode::Auto, true) | (Mode::Exhaustive, true) => Mode::Exhaustive,
        _ => Mode::Witness,
    };
    if let Some(v) = witness(
        &zero,
        if mode == Mode::Exhaustive {
            Method::Exhaustive
        } else {
            Method::WitnessSet
        },
    ) {
        return Ok(v);
    }
    if mode == Mode::Exhaustive {
        let order = match ScanOrder::new(&s.span, limits.max_enum) {
            Ok(o) => o,
            Err(e @ Error::EnumerationTooLarge { .. }) => {
                if uniform_holds() {
                    return Ok(Verdict::holds(Method::DerivedCriterion));
                }
                return Ok(s_basis
                    .iter()
                    .find_map(|q| witness(q, Method::WitnessSet))
                    .unwrap_or_else(|| Verdict::unknown(Method::Exhaustive, e.to_string())));
            }
            Err(e) => return Err(e),
        };
        let hit = scan_first(&order, |v| {
            let q = unflat(f, n, v);
            least_point(&bad_p(&q)).map(|p| (unflat(f, n, &p), q))
        });
        return Ok(match hit {
            Some((_, (p, q))) => Verdict::fails(Method::Exhaustive, Witness::OperatorPair { p, q }),
            None => Verdict::holds(Method::Exhaustive),
        });
    }
    if uniform_holds() {
        return Ok(Verdict::holds(Method::DerivedCriterion));
    }
    Ok(s_basis
        .iter()
        .find_map(|q| witness(q, Method::WitnessSet))
        .unwrap_or_else(|| Verdict::unknown(Method::WitnessSet, "no basis q refutes")))
}
