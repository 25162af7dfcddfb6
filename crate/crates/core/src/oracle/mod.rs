//! Exact homological invariants of finite-dimensional algebras.
//!
//! Dimensions are measured through Ext with the top `A / rad A`, which
//! contains every simple module: `id X ≤ n` iff `Ext^{n+1}(top, X) = 0`,
//! `pd X ≤ n` iff `Ext^{n+1}(X, top) = 0`, and the global dimension is the
//! projective dimension of the top. Only degrees up to a cap are computed;
//! anything not settled by then is reported as exceeding the cap.

pub mod algebra;
pub mod radical;
pub mod resolution;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Field, Subspace};

pub use algebra::{FiniteDimAlgebra, ModuleRep, StructureJson};
pub use radical::{is_nilpotent, radical, top_module};
pub use resolution::{ext_dims, ExtRanks, HomTarget, Projectives, Resolution};

pub const DEFAULT_CAP: usize = 8;

/// A homological dimension, or the statement that it is not settled by the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionVerdict {
    Finite(usize),
    /// Ext was nonzero in every degree up to the cap.
    Exceeds(usize),
}

impl DimensionVerdict {
    pub fn finite(self) -> Option<usize> {
        match self {
            DimensionVerdict::Finite(n) => Some(n),
            DimensionVerdict::Exceeds(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        self.finite().is_some()
    }

    /// Known to be at most `n`.
    pub fn at_most(self, n: usize) -> bool {
        self.finite().is_some_and(|d| d <= n)
    }
}

impl fmt::Display for DimensionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionVerdict::Finite(n) => write!(f, "{n}"),
            DimensionVerdict::Exceeds(cap) => write!(f, ">{cap}"),
        }
    }
}

impl Serialize for DimensionVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DimensionVerdict::Finite(n) => s.serialize_u64(*n as u64),
            DimensionVerdict::Exceeds(_) => s.serialize_str(&self.to_string()),
        }
    }
}

/// One side of an algebra: its radical, top and projectives.
#[derive(Debug, Clone)]
pub struct Oracle<F: Field> {
    rad: Subspace<F>,
    top: ModuleRep<F>,
    proj: Projectives<F>,
}

impl<F: Field> Oracle<F> {
    pub fn new(algebra: &FiniteDimAlgebra<F>) -> Result<Self> {
        let rad = radical(algebra)?;
        Ok(Self::with_radical(algebra, rad))
    }

    /// Reuse a known radical, e.g. for the opposite algebra, whose radical
    /// is the same subspace.
    pub fn with_radical(algebra: &FiniteDimAlgebra<F>, rad: Subspace<F>) -> Self {
        let top = top_module(algebra, &rad);
        let proj = Projectives::new(algebra, &rad);
        Oracle { rad, top, proj }
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra<F> {
        self.proj.algebra()
    }

    pub fn radical(&self) -> &Subspace<F> {
        &self.rad
    }

    pub fn top(&self) -> &ModuleRep<F> {
        &self.top
    }

    pub fn projectives(&self) -> &Projectives<F> {
        &self.proj
    }

    pub fn resolve(&self, module: &ModuleRep<F>) -> Resolution<'_, F> {
        Resolution::new(&self.proj, module)
    }

    pub fn target(&self, module: &ModuleRep<F>) -> HomTarget<F> {
        HomTarget::new(&self.proj, module)
    }

    /// `dim Ext^i(m, x)` for `i = 0..=max`.
    pub fn ext_dims(&self, m: &ModuleRep<F>, x: &ModuleRep<F>, max: usize) -> Vec<usize> {
        ext_dims(&mut self.resolve(m), &self.target(x), max)
    }

    /// Injective dimension of `x`.
    pub fn injective_dimension_of(&self, x: &ModuleRep<F>, cap: usize) -> DimensionVerdict {
        first_vanishing(&mut self.resolve(&self.top), &self.target(x), cap)
    }

    /// Injective dimension of the regular module.
    pub fn self_injective_dimension(&self, cap: usize) -> DimensionVerdict {
        self.injective_dimension_of(&self.algebra().regular_module(), cap)
    }

    pub fn projective_dimension(&self, m: &ModuleRep<F>, cap: usize) -> DimensionVerdict {
        first_vanishing(&mut self.resolve(m), &self.target(&self.top), cap)
    }

    pub fn global_dimension(&self, cap: usize) -> DimensionVerdict {
        self.projective_dimension(&self.top, cap)
    }

    /// Self-injective and global dimension from one resolution of the top.
    pub fn dimensions(&self, cap: usize) -> (DimensionVerdict, DimensionVerdict) {
        let mut res = self.resolve(&self.top);
        let id = first_vanishing(&mut res, &self.target(&self.algebra().regular_module()), cap);
        let gl = first_vanishing(&mut res, &self.target(&self.top), cap);
        (id, gl)
    }

    /// `Ext^1(m, top) = 0`.
    pub fn is_module_projective(&self, m: &ModuleRep<F>) -> bool {
        let mut res = self.resolve(m);
        ExtRanks::default().ext(&mut res, &self.target(&self.top), 1) == 0
    }
}

/// `n − 1` for the first `n` in `1..=cap` with `Ext^n = 0`.
fn first_vanishing<F: Field>(res: &mut Resolution<'_, F>, target: &HomTarget<F>, cap: usize) -> DimensionVerdict {
    let mut ranks = ExtRanks::default();
    for n in 1..=cap {
        if ranks.ext(res, target, n) == 0 {
            return DimensionVerdict::Finite(n - 1);
        }
    }
    DimensionVerdict::Exceeds(cap)
}

/// Both one-sided self-injective dimensions and the global dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub left: DimensionVerdict,
    pub right: DimensionVerdict,
    pub gldim: DimensionVerdict,
    pub cap: usize,
}

impl OracleReport {
    /// Gorenstein within the cap: both sides finite.
    pub fn gorenstein(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }
}

/// Left and right oracles share the radical.
pub fn two_sided<F: Field>(algebra: &FiniteDimAlgebra<F>) -> Result<(Oracle<F>, Oracle<F>)> {
    let left = Oracle::new(algebra)?;
    let right = Oracle::with_radical(&algebra.opposite(), left.rad.clone());
    Ok((left, right))
}

pub fn analyze<F: Field>(algebra: &FiniteDimAlgebra<F>, cap: usize) -> Result<OracleReport> {
    let (left, right) = two_sided(algebra)?;
    let ((l, gldim), r) = join(|| left.dimensions(cap), || right.self_injective_dimension(cap));
    check_zaks(l, r)?;
    Ok(OracleReport { left: l, right: r, gldim, cap })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GorensteinVerdict {
    pub gorenstein: bool,
    pub left: DimensionVerdict,
    pub right: DimensionVerdict,
}

pub fn is_gorenstein_oracle<F: Field>(algebra: &FiniteDimAlgebra<F>, cap: usize) -> Result<GorensteinVerdict> {
    let (left, right) = two_sided(algebra)?;
    let (l, r) = join(|| left.self_injective_dimension(cap), || right.self_injective_dimension(cap));
    check_zaks(l, r)?;
    Ok(GorensteinVerdict { gorenstein: l.is_finite() && r.is_finite(), left: l, right: r })
}

/// Finite one-sided self-injective dimensions of a noetherian ring agree.
fn check_zaks(left: DimensionVerdict, right: DimensionVerdict) -> Result<()> {
    match (left.finite(), right.finite()) {
        (Some(l), Some(r)) if l != r => Err(Error::ZaksViolation { left: l, right: r }),
        _ => Ok(()),
    }
}

#[cfg(feature = "parallel")]
fn join<A: Send, B: Send>(a: impl FnOnce() -> A + Send, b: impl FnOnce() -> B + Send) -> (A, B) {
    rayon::join(a, b)
}

#[cfg(not(feature = "parallel"))]
fn join<A: Send, B: Send>(a: impl FnOnce() -> A + Send, b: impl FnOnce() -> B + Send) -> (A, B) {
    (a(), b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn verdict_serialization() {
        assert_eq!(serde_json::to_string(&DimensionVerdict::Finite(2)).unwrap(), "2");
        assert_eq!(serde_json::to_string(&DimensionVerdict::Exceeds(8)).unwrap(), "\">8\"");
    }

    #[test]
    fn group_algebra_in_bad_characteristic() {
        let a = FiniteDimAlgebra::group_algebra(&PrimeField::new(2).unwrap(), &GroupTable::cyclic(2));
        let report = analyze(&a, 8).unwrap();
        assert_eq!(report.left, DimensionVerdict::Finite(0));
        assert_eq!(report.right, DimensionVerdict::Finite(0));
        assert_eq!(report.gldim, DimensionVerdict::Exceeds(8));
        let oracle = Oracle::new(&a).unwrap();
        assert!(!oracle.is_module_projective(oracle.top()));
        assert!(oracle.is_module_projective(&a.regular_module()));
    }

    #[test]
    fn semisimple_group_algebra() {
        let a = FiniteDimAlgebra::group_algebra(&Rationals, &GroupTable::symmetric3());
        let report = analyze(&a, 4).unwrap();
        assert_eq!(report.gldim, DimensionVerdict::Finite(0));
        assert!(report.gorenstein());
        let v = is_gorenstein_oracle(&a, 4).unwrap();
        assert_eq!((v.left, v.right), (DimensionVerdict::Finite(0), DimensionVerdict::Finite(0)));
    }
}
