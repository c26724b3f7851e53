//! Family classification, rational orthogonal similarities and the DGS
//! decision procedure.

mod certificate;
mod decide;
mod similarity;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{find_twins, Graph, GraphError, TwinInfo};
use crate::linalg::{factorize, rank_rational, smith_normal_form, LinalgError, SnfResult};
use crate::walk::{walk_matrix, xi_scaled, xi_vector, WalkError};

pub use certificate::{verify_certificate, Discrepancy, CERT_SCHEMA};
pub use decide::{
    check_addcon, decide_dgs, decide_dgs_with_mates, mainp_refute, AddconRecord, Counterexample,
    DgsCertificate, MainpRecord, PrimeEvidence, Refutation, Verdict,
};
pub use similarity::{
    almost_controllable_solutions, controllable_q, level, permutation_matrix,
    verify_regular_orthogonal, RationalOrthogonalSolution,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("graphs are not generalized cospectral")]
    NotCospectral,
    #[error("graph is not controllable")]
    NotControllable,
    #[error("graph is not almost controllable")]
    NotAlmostControllable,
    #[error("addcon holds at p = {0}; there is nothing to refute")]
    AddconHolds(u64),
    /// A computed object contradicts a proven identity; the CLI maps this to
    /// exit code 2.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl EngineError {
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            EngineError::Invariant(_)
                | EngineError::Walk(
                    WalkError::NonIntegralScaling(_)
                        | WalkError::KernelDimension { .. }
                        | WalkError::NotEigenvector { .. }
                        | WalkError::OddGramEntry
                )
        )
    }
}

pub(crate) fn invariant(msg: impl Into<String>) -> EngineError {
    EngineError::Invariant(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Controllable,
    AlmostControllableAsymmetric,
    AlmostControllableSymmetric,
    Other,
}

impl Family {
    pub fn is_almost_controllable(self) -> bool {
        matches!(
            self,
            Family::AlmostControllableAsymmetric | Family::AlmostControllableSymmetric
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Controllable => "controllable",
            Family::AlmostControllableAsymmetric => "almost_controllable_asymmetric",
            Family::AlmostControllableSymmetric => "almost_controllable_symmetric",
            Family::Other => "other",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub n: usize,
    pub rank_q: usize,
    pub family: Family,
    pub twins: Option<TwinInfo>,
    pub in_f_n: bool,
    pub in_f_n_star: bool,
    /// odd square-free `b` with `2b` the `(n-1)`-th invariant factor
    pub b: Option<BigInt>,
    pub snf: SnfResult,
}

/// The `b` read off an SNF of the shape
/// `diag(1^ceil(n/2), 2^(floor(n/2) - 2), 2b, 0)` with `b` odd and
/// square-free, or `None` for any other shape. Needs `n >= 4`.
pub fn family_b_from_snf(snf: &SnfResult) -> Result<Option<BigInt>, LinalgError> {
    let d = &snf.invariant_factors;
    let n = d.len();
    if n < 4 || snf.rows != snf.cols {
        return Ok(None);
    }
    let ones = n.div_ceil(2);
    let twos = n / 2 - 2;
    let shape_ok = d[..ones].iter().all(|x| x.is_one())
        && d[ones..ones + twos].iter().all(|x| *x == BigInt::from(2))
        && d[n - 1] == BigInt::default();
    let two_b = &d[n - 2];
    if !shape_ok || !two_b.is_positive() || two_b.is_odd() {
        return Ok(None);
    }
    let b: BigInt = two_b / 2;
    if b.is_even() {
        return Ok(None);
    }
    Ok(factorize(&b)?.is_square_free().then_some(b))
}

/// The `b` of the cofactor criterion: `|xi_tau| / 2^(floor(n/2) - 1)`
/// when that is odd and square-free.
fn family_b_from_cofactor(g: &Graph, twins: &TwinInfo) -> Result<Option<BigInt>, EngineError> {
    let scaled = xi_scaled(&xi_vector(g)?)?;
    let b = scaled[twins.tau].abs();
    if b.is_even() {
        return Ok(None);
    }
    Ok(factorize(&b)?.is_square_free().then_some(b))
}

/// Family membership with SNF evidence. The SNF description of `F_n` is
/// cross-checked against the cofactor description; a disagreement is an
/// invariant violation.
pub fn classify(g: &Graph) -> Result<GraphClass, EngineError> {
    let n = g.order();
    let w = walk_matrix(g);
    let rank_q = rank_rational(&w);
    let snf = smith_normal_form(&w, false);
    if snf.rank() != rank_q {
        return Err(invariant("SNF rank differs from rational rank"));
    }
    let twins = if n > 0 && rank_q + 1 == n {
        find_twins(g).map_err(|e| invariant(format!("almost controllable graph: {e}")))?
    } else {
        None
    };
    let family = if rank_q == n {
        Family::Controllable
    } else if rank_q + 1 == n {
        if twins.is_some() {
            Family::AlmostControllableSymmetric
        } else {
            Family::AlmostControllableAsymmetric
        }
    } else {
        Family::Other
    };
    let mut b = None;
    if let Some(t) = &twins {
        if n >= 4 {
            b = family_b_from_snf(&snf)?;
            let by_cofactor = family_b_from_cofactor(g, t)?;
            if b != by_cofactor {
                return Err(invariant(format!(
                    "F_n membership by SNF ({b:?}) and by cofactor ({by_cofactor:?}) disagree"
                )));
            }
        }
    }
    let in_f_n = b.is_some();
    let in_f_n_star = b.as_ref().is_some_and(|b| b.is_one());
    Ok(GraphClass {
        n,
        rank_q,
        family,
        twins,
        in_f_n,
        in_f_n_star,
        b,
        snf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_classes() {
        let c = classify(&fixtures::level_three_mate_9()).unwrap();
        assert_eq!(c.family, Family::AlmostControllableSymmetric);
        assert!(c.in_f_n && !c.in_f_n_star);
        assert_eq!(c.b, Some(BigInt::from(303)));
        let t = c.twins.unwrap();
        assert_eq!((t.tau, t.tau_prime), (0, 1));

        let c = classify(&fixtures::adjacent_twins_10()).unwrap();
        assert_eq!(c.b, Some(BigInt::from(152345)));
        assert_eq!(c.twins.unwrap().lambda1, -1);

        let c = classify(&fixtures::refuted_prime_13()).unwrap();
        assert_eq!(c.b, Some(BigInt::from(123899854845u64)));
    }

    #[test]
    fn complete_graph_is_other() {
        let c = classify(&Graph::complete(3)).unwrap();
        assert_eq!((c.rank_q, c.family, c.in_f_n), (1, Family::Other, false));
    }

    #[test]
    fn snf_shape_reader() {
        let snf = |d: &[i64]| SnfResult {
            rows: d.len(),
            cols: d.len(),
            invariant_factors: d.iter().map(|&x| BigInt::from(x)).collect(),
            transforms: None,
        };
        assert_eq!(
            family_b_from_snf(&snf(&[1, 1, 2, 0])).unwrap(),
            Some(BigInt::one())
        );
        assert_eq!(
            family_b_from_snf(&snf(&[1, 1, 1, 2, 30, 0])).unwrap(),
            Some(BigInt::from(15))
        );
        // 2b = 18: b = 9 is not square-free
        assert_eq!(family_b_from_snf(&snf(&[1, 1, 1, 2, 18, 0])).unwrap(), None);
        // 2b = 4: b even
        assert_eq!(family_b_from_snf(&snf(&[1, 1, 1, 2, 4, 0])).unwrap(), None);
        assert_eq!(family_b_from_snf(&snf(&[1, 1, 1, 1, 2, 0])).unwrap(), None);
        assert_eq!(family_b_from_snf(&snf(&[1, 2, 0])).unwrap(), None);
    }
}
