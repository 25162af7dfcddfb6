//! Cross-checking the classifier against the homological oracle.

use serde::Serialize;

use crate::category::FiniteCategory;
use crate::classifier::{classify_presentation, present_skeleton, ClassificationReport};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::FieldSpec;
use crate::oracle::{analyze, FiniteDimAlgebra, OracleReport};
use crate::with_field;

pub const DEFAULT_DIM_LIMIT: usize = 64;

/// Oracle verdicts for `kC`, computed on a skeleton (the algebras are
/// Morita equivalent, so all dimensions agree).
pub fn oracle_report(c: &FiniteCategory, field: FieldSpec, cap: usize, dim_limit: usize) -> Result<OracleReport> {
    let p = present_skeleton(c)?;
    let dim = p.category().num_morphisms();
    if dim > dim_limit {
        return Err(Error::DimensionLimitExceeded { dim, limit: dim_limit });
    }
    with_field!(field, f => analyze(&FiniteDimAlgebra::from_category(&f, p.category()), cap))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Agreement {
    /// Classifier Gorenstein ⇔ both self-injective dimensions finite within the cap.
    pub gorenstein: bool,
    /// Classifier 1-Gorenstein ⇔ both self-injective dimensions at most 1.
    pub one_gorenstein: bool,
    /// Classifier hereditary ⇔ global dimension at most 1.
    pub hereditary: bool,
}

impl Agreement {
    pub fn all(&self) -> bool {
        self.gorenstein && self.one_gorenstein && self.hereditary
    }
}

pub fn agreement(report: &ClassificationReport, oracle: &OracleReport) -> Agreement {
    let both_finite = oracle.left.is_finite() && oracle.right.is_finite();
    Agreement {
        gorenstein: report.gorenstein == both_finite,
        one_gorenstein: report.one_gorenstein == (oracle.left.at_most(1) && oracle.right.at_most(1)),
        hereditary: report.hereditary == oracle.gldim.at_most(1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceCheck {
    pub name: String,
    pub characteristic: u64,
    pub classification: ClassificationReport,
    pub oracle: OracleReport,
    pub agreement: Agreement,
}

pub fn check_instance(name: &str, c: &FiniteCategory, field: FieldSpec, cap: usize) -> Result<InstanceCheck> {
    let p = present_skeleton(c)?;
    let classification = classify_presentation(&p, field, false);
    let oracle = oracle_report(c, field, cap, usize::MAX)?;
    let agreement = agreement(&classification, &oracle);
    Ok(InstanceCheck { name: name.into(), characteristic: field.characteristic(), classification, oracle, agreement })
}

/// Every (instance, characteristic) pair, in input order.
pub fn verify_all(
    instances: &[(String, FiniteCategory)],
    fields: &[FieldSpec],
    cap: usize,
    exec: Execution,
) -> Vec<Result<InstanceCheck>> {
    let jobs: Vec<(usize, FieldSpec)> =
        (0..instances.len()).flat_map(|i| fields.iter().map(move |&f| (i, f))).collect();
    exec.map(&jobs, |&(i, f)| check_instance(&instances[i].0, &instances[i].1, f, cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::named;
    use crate::oracle::DimensionVerdict::{Exceeds, Finite};

    #[test]
    fn named_oracle_values() {
        let f = |p| FieldSpec::new(p).unwrap();
        let r = oracle_report(&named::chain3(), f(0), 8, 64).unwrap();
        assert_eq!((r.left, r.right, r.gldim), (Finite(1), Finite(1), Finite(1)));
        let r = oracle_report(&named::diamond(), f(0), 8, 64).unwrap();
        assert_eq!((r.left, r.right), (Finite(2), Finite(2)));
        let r = oracle_report(&named::z2(), f(2), 8, 64).unwrap();
        assert_eq!((r.left, r.right, r.gldim), (Finite(0), Finite(0), Exceeds(8)));
        let r = oracle_report(&named::regular_orbit(), f(2), 8, 64).unwrap();
        assert_eq!((r.left, r.right, r.gldim), (Finite(1), Finite(1), Exceeds(8)));
        let r = oracle_report(&named::stabilized_alpha(), f(2), 8, 64).unwrap();
        assert_eq!((r.left, r.right), (Exceeds(8), Exceeds(8)));
        let r = oracle_report(&named::stabilized_alpha(), f(3), 8, 64).unwrap();
        assert_eq!(r.gldim, Finite(1));
    }

    #[test]
    fn dimension_limit() {
        assert!(matches!(
            oracle_report(&named::diamond(), FieldSpec::rationals(), 8, 4),
            Err(Error::DimensionLimitExceeded { dim: 9, limit: 4 })
        ));
    }
}
