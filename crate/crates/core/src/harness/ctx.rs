//! Per-instance state shared by the checks, with cached verdicts.

use std::cell::OnceCell;

use crate::config::{Limits, Mode};
use crate::corpus::Instance;
use crate::envelope::{self, OperatorAlgebra, Source};
use crate::error::Result;
use crate::exalg::{Matrix, Scalar, ScanOrder, Subspace};
use crate::homlie::HomLieAlgebra;
use crate::props;
use crate::quotients::{self, Extension};
use crate::verdict::Verdict;

/// Largest number of projective points of `Q` fed to the per-point checks.
const MAX_POINTS: usize = 512;

pub struct Ctx {
    pub(crate) ext: Extension,
    pub(crate) limits: Limits,
    sp_l: OnceCell<Verdict>,
    sp_q: OnceCell<Verdict>,
    weak: OnceCell<Verdict>,
    quot: OnceCell<Verdict>,
    dense: OnceCell<Verdict>,
    msp_q: OnceCell<Verdict>,
    a0: OnceCell<OperatorAlgebra>,
    aq: OnceCell<OperatorAlgebra>,
    aql: OnceCell<OperatorAlgebra>,
    lat_l: OnceCell<Option<Vec<(Subspace, bool)>>>,
    lat_q: OnceCell<Option<Vec<(Subspace, bool)>>>,
}

macro_rules! cached {
    ($self:ident . $cell:ident, $e:expr) => {{
        if let Some(v) = $self.$cell.get() {
            return Ok(v.clone());
        }
        let v = $e;
        let _ = $self.$cell.set(v.clone());
        Ok(v)
    }};
}

impl Ctx {
    pub fn new(instance: &Instance, limits: Limits) -> Result<Self> {
        let ext = match instance {
            Instance::Algebra(l) => Extension::trivial(l.clone())?,
            Instance::Extension(e) => e.clone(),
        };
        Ok(Ctx {
            ext,
            limits,
            sp_l: OnceCell::new(),
            sp_q: OnceCell::new(),
            weak: OnceCell::new(),
            quot: OnceCell::new(),
            dense: OnceCell::new(),
            msp_q: OnceCell::new(),
            a0: OnceCell::new(),
            aq: OnceCell::new(),
            aql: OnceCell::new(),
            lat_l: OnceCell::new(),
            lat_q: OnceCell::new(),
        })
    }

    pub fn e(&self) -> &Extension {
        &self.ext
    }

    pub fn q(&self) -> &HomLieAlgebra {
        self.ext.ambient()
    }

    pub fn l(&self) -> &HomLieAlgebra {
        self.ext.sub_algebra()
    }

    pub fn lim(&self) -> &Limits {
        &self.limits
    }

    pub fn finite(&self) -> bool {
        self.q().field().is_finite()
    }

    pub fn semiprime_l(&self) -> Result<Verdict> {
        cached!(
            self.sp_l,
            props::is_semiprime(self.l(), Mode::Auto, &self.limits)?
        )
    }

    pub fn semiprime_q(&self) -> Result<Verdict> {
        cached!(
            self.sp_q,
            props::is_semiprime(self.q(), Mode::Auto, &self.limits)?
        )
    }

    pub fn weak(&self) -> Result<Verdict> {
        cached!(
            self.weak,
            quotients::is_weak_quotient_algebra(&self.ext, Mode::Auto, &self.limits)?
        )
    }

    pub fn quotient(&self) -> Result<Verdict> {
        cached!(
            self.quot,
            quotients::is_quotient_algebra(&self.ext, Mode::Auto, &self.limits)?
        )
    }

    pub fn dense(&self) -> Result<Verdict> {
        cached!(
            self.dense,
            envelope::hom_annihilator_dense(&self.ext)?.dense
        )
    }

    pub fn mult_semiprime_q(&self) -> Result<Verdict> {
        cached!(
            self.msp_q,
            envelope::is_multiplicatively_semiprime(self.q(), Mode::Auto, &self.limits)?
        )
    }

    pub fn a0(&self) -> Result<OperatorAlgebra> {
        cached!(self.a0, envelope::invariant_subalgebra_a0(&self.ext)?)
    }

    /// `A(Q)`
    pub fn aq(&self) -> Result<OperatorAlgebra> {
        cached!(self.aq, envelope::inner_envelope(&self.ext, Source::Q))
    }

    /// `A_Q(L)`
    pub fn aql(&self) -> Result<OperatorAlgebra> {
        cached!(self.aql, envelope::inner_envelope(&self.ext, Source::L))
    }

    /// Ideals of `L` (in L-coordinates) with their essential flags, or `None`
    /// when the lattice is out of reach.
    pub fn lattice_l(&self) -> Result<Option<Vec<(Subspace, bool)>>> {
        cached!(self.lat_l, lattice_of(self.l(), &self.limits)?)
    }

    pub fn lattice_q(&self) -> Result<Option<Vec<(Subspace, bool)>>> {
        cached!(self.lat_q, lattice_of(self.q(), &self.limits)?)
    }

    /// Points of `Q` used by the per-point checks: every projective point when
    /// there are few, otherwise the standard basis.
    pub fn q_points(&self) -> Vec<Vec<Scalar>> {
        let q = self.q();
        if q.field().is_finite() {
            if let Ok(order) = ScanOrder::full(q.field(), q.dim(), MAX_POINTS as u64) {
                return order.iter().collect();
            }
        }
        (0..q.dim()).map(|i| q.unit(i)).collect()
    }

    /// Does [`Ctx::q_points`] cover every projective point?
    pub fn q_points_exhaustive(&self) -> bool {
        let q = self.q();
        q.field().is_finite() && ScanOrder::full(q.field(), q.dim(), MAX_POINTS as u64).is_ok()
    }

    /// `ad_x` on `Q`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        self.q().ad_unchecked(x)
    }

    /// Is `[α(q), I] ⊆ L` for an ideal `I` of `L` in L-coordinates?
    pub fn absorbs(&self, q: &[Scalar], i: &Subspace) -> bool {
        let tq = self.q().twist_vec(q);
        i.basis().iter().all(|y| {
            self.ext
                .in_sub(&self.q().bracket_vec(&tq, &self.ext.from_sub_coords(y)))
        })
    }
}

fn lattice_of(l: &HomLieAlgebra, limits: &Limits) -> Result<Option<Vec<(Subspace, bool)>>> {
    if l.field().is_finite() {
        return match props::ideal_lattice(l, limits) {
            Ok(lat) => Ok(Some(
                lat.ideals
                    .iter()
                    .cloned()
                    .zip(lat.essential.iter().copied())
                    .collect(),
            )),
            Err(
                crate::Error::EnumerationTooLarge { .. } | crate::Error::LatticeTooLarge { .. },
            ) => Ok(None),
            Err(e) => Err(e),
        };
    }
    if props::has_trivial_lattice(l)? {
        let zero = l.zero_space();
        let full = l.full_space();
        // 0 is essential only in the zero algebra; L is essential once L ≠ 0
        let l_zero = l.dim() == 0;
        if l_zero {
            return Ok(Some(vec![(zero, true)]));
        }
        return Ok(Some(vec![(zero, false), (full, true)]));
    }
    Ok(None)
}
