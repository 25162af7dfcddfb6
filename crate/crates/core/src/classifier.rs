//! Gorenstein, 1-Gorenstein, 0-Gorenstein and hereditary classification.
//!
//! The Gorenstein property of `kC` is decided by projectivity of the
//! category over `k`, and 1-Gorenstein by projectivity together with
//! freeness. Neither uses homological computation; the oracle is only a
//! cross-check.

use serde::{Serialize, Serializer};

use crate::category::{FiniteCategory, Presentation};
use crate::error::{Error, Result};
use crate::freeness::{is_free, Counterexample};
use crate::group::{is_projective_over, StabilizerWitness};
use crate::linalg::{FieldSpec, Rationals};
use crate::triangular::{build_triangular, MStarEntry};

/// A dimension bound, or `"n/a"` when its hypotheses fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Value(usize),
    NotApplicable,
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::Value(d) => s.serialize_u64(*d as u64),
            Bound::NotApplicable => s.serialize_str("n/a"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub stabilizers: Vec<StabilizerWitness>,
    pub free_from: Vec<(String, bool)>,
    pub mstar: Vec<MStarEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub characteristic: u64,
    pub is_ei: bool,
    pub is_skeletal: bool,
    /// Object names in admissible order (of the skeleton).
    pub ordering: Vec<String>,
    pub projective_over_k: bool,
    /// A non-isomorphism with a stabilizer of order divisible by the characteristic.
    pub witness: Option<String>,
    pub free: bool,
    pub counterexample: Option<Counterexample>,
    pub gorenstein: bool,
    pub one_gorenstein: bool,
    pub zero_gorenstein: bool,
    pub hereditary: bool,
    pub gorenstein_dim_bound: Bound,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explain: Option<Explanation>,
}

/// Skeletal presentation, skeletalizing when needed.
pub fn present_skeleton(c: &FiniteCategory) -> Result<Presentation> {
    if let Some(f) = c.is_ei().witness {
        return Err(Error::NotEI(c.name(f).into()));
    }
    if c.is_skeletal() {
        c.present()
    } else {
        c.skeletalize().0.present()
    }
}

pub fn classify(c: &FiniteCategory, field: FieldSpec) -> Result<ClassificationReport> {
    let p = present_skeleton(c)?;
    let mut report = classify_presentation(&p, field, false);
    report.is_skeletal = c.is_skeletal();
    Ok(report)
}

pub fn classify_explained(c: &FiniteCategory, field: FieldSpec) -> Result<ClassificationReport> {
    let p = present_skeleton(c)?;
    let mut report = classify_presentation(&p, field, true);
    report.is_skeletal = c.is_skeletal();
    Ok(report)
}

/// Classification of an already presented category.
pub fn classify_presentation(p: &Presentation, field: FieldSpec, explain: bool) -> ClassificationReport {
    let projectivity = is_projective_over(p, field);
    let freeness = is_free(p);
    let projective = projectivity.projective;
    let gorenstein = projective;
    let one_gorenstein = gorenstein && freeness.free;
    let groups_invertible = (0..p.n()).all(|i| field.is_invertible(p.aut(i).order() as u64));
    let hereditary = freeness.free && groups_invertible;
    let zero_gorenstein = p.non_isomorphisms().next().is_none();
    // M_t^* dimensions only depend on the category, so the ledger is computed
    // over Q regardless of the characteristic.
    let mstar = build_triangular(p, &Rationals).mstar_ledger();
    let gorenstein_dim_bound = if projective && mstar.iter().all(|e| e.projective) {
        // Group algebras are self-injective.
        Bound::Value(gorenstein_bound(&vec![0; p.n()], true).expect("hypothesis checked"))
    } else {
        Bound::NotApplicable
    };
    ClassificationReport {
        characteristic: field.characteristic(),
        is_ei: true,
        is_skeletal: true,
        ordering: p.ordering_names(),
        projective_over_k: projective,
        witness: projectivity.witnesses.first().map(|w| w.morphism.clone()),
        free: freeness.free,
        counterexample: freeness.counterexample,
        gorenstein,
        one_gorenstein,
        zero_gorenstein,
        hereditary,
        gorenstein_dim_bound,
        explain: explain.then(|| Explanation {
            stabilizers: projectivity.witnesses,
            free_from: freeness.free_from,
            mstar,
        }),
    }
}

/// Upper bound for the self-injective dimension of a triangular algebra
/// whose vertex algebras have self-injective dimensions `d`, given that
/// every `M_t^*` is projective. Adding vertex `t` keeps the bound at the
/// maximum when it differs from `d_t`, and raises it by one when equal.
pub fn gorenstein_bound(d: &[usize], mstar_projective: bool) -> Result<usize> {
    if !mstar_projective {
        return Err(Error::HypothesisViolated("some M_t^* is not projective".into()));
    }
    let (&first, rest) = d
        .split_first()
        .ok_or_else(|| Error::HypothesisViolated("no vertices".into()))?;
    Ok(rest.iter().fold(first, |acc, &dt| if acc != dt { acc.max(dt) } else { acc + 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bound_examples() {
        assert_eq!(gorenstein_bound(&[0, 0], true).unwrap(), 1);
        assert_eq!(gorenstein_bound(&[0, 1], true).unwrap(), 1);
        assert_eq!(gorenstein_bound(&[0, 0, 0], true).unwrap(), 1);
        assert_eq!(gorenstein_bound(&[3], true).unwrap(), 3);
        assert!(matches!(gorenstein_bound(&[0, 0], false), Err(Error::HypothesisViolated(_))));
    }

    proptest! {
        #[test]
        fn bound_never_exceeds_max_plus_one(d in prop::collection::vec(0usize..5, 1..8)) {
            let b = gorenstein_bound(&d, true).unwrap();
            let max = *d.iter().max().unwrap();
            prop_assert!(b <= max + 1);
            prop_assert!(b >= max);
        }
    }

    #[test]
    fn chain_classification() {
        let c = crate::category::tests::chain3();
        for p in [0, 2, 3] {
            let r = classify(&c, FieldSpec::new(p).unwrap()).unwrap();
            assert!(r.gorenstein && r.one_gorenstein && r.hereditary && !r.zero_gorenstein);
            assert_eq!(r.gorenstein_dim_bound, Bound::Value(1));
        }
        let json = serde_json::to_value(classify(&c, FieldSpec::new(0).unwrap()).unwrap()).unwrap();
        assert_eq!(json["gorenstein_dim_bound"], 1);
        assert!(json.get("explain").is_none());
    }
}
