//! Certificate serialization and independent re-checking.

use std::fmt::Display;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::decide::{assess, DgsCertificate, Verdict};
use super::similarity::{
    almost_controllable_solutions, controllable_q, level, verify_regular_orthogonal,
};
use super::{EngineError, Family};
use crate::graph::{generalized_cospectral, is_isomorphic, Graph, MAX_ISOMORPHISM_ORDER};
use crate::linalg::{smith_normal_form, RatMatrix};
use crate::walk::{w_delta, walk_matrix};

pub const CERT_SCHEMA: &str = "dgs-cert/1";

/// A certificate claim that recomputation does not reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct Discrepancy(pub String);

impl From<EngineError> for Discrepancy {
    fn from(e: EngineError) -> Self {
        Discrepancy(format!("recomputation failed: {e}"))
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), Discrepancy> {
    if ok {
        Ok(())
    } else {
        Err(Discrepancy(what()))
    }
}

/// Recomputes every quantity in `c` from `g` and confirms the verdict
/// follows from them.
pub fn verify_certificate(c: &DgsCertificate, g: &Graph) -> Result<(), Discrepancy> {
    check(c.schema == CERT_SCHEMA, || {
        format!("schema mismatch: {}", c.schema)
    })?;
    check(c.graph == g.to_graph6(), || "graph mismatch".into())?;
    check(c.n == g.order(), || "order mismatch".into())?;

    let a = assess(g)?;
    check(c.family == a.class.family, || "family mismatch".into())?;
    check(c.snf == a.class.snf.invariant_factors, || {
        "snf mismatch".into()
    })?;
    check(c.in_f_n == a.class.in_f_n, || {
        "F_n membership mismatch".into()
    })?;
    check(c.b == a.class.b, || "b mismatch".into())?;
    check(c.fullbr == a.fullbr, || "fullbr mismatch".into())?;

    let claimed: Vec<u64> = c.evidence.iter().map(|e| e.p).collect();
    let actual: Vec<u64> = a.evidence.iter().map(|e| e.p).collect();
    check(claimed == actual, || "prime list mismatch".into())?;
    for (x, y) in c.evidence.iter().zip(&a.evidence) {
        let p = y.p;
        check(x.beta == y.beta, || format!("beta mismatch at p = {p}"))?;
        check(x.lambda0 == y.lambda0, || {
            format!("lambda0 mismatch at p = {p}")
        })?;
        check(x.lambda1 == y.lambda1, || {
            format!("lambda1 mismatch at p = {p}")
        })?;
        check(x.addcon_holds == y.addcon_holds, || {
            format!("addcon mismatch at p = {p}")
        })?;
        check(x.mainp == y.mainp, || {
            format!("quadratic test mismatch at p = {p}")
        })?;
    }

    match c.verdict {
        Verdict::NotDgs => {
            check(a.verdict == Verdict::Unknown, || {
                "NOT_DGS claimed for a certified graph".into()
            })?;
            let ce = c
                .counterexample
                .as_ref()
                .ok_or_else(|| Discrepancy("NOT_DGS without counterexample".into()))?;
            verify_counterexample(ce, g, a.class.family)
        }
        v => {
            check(v == a.verdict, || {
                format!("verdict mismatch: claimed {v}, recomputed {}", a.verdict)
            })?;
            check(c.counterexample.is_none(), || {
                "unexpected counterexample".into()
            })
        }
    }
}

fn verify_counterexample(
    ce: &super::decide::Counterexample,
    g: &Graph,
    family: Family,
) -> Result<(), Discrepancy> {
    let h = Graph::parse_graph6(&ce.mate)
        .map_err(|e| Discrepancy(format!("mate does not parse: {e}")))?;
    check(h.order() == g.order(), || "mate order mismatch".into())?;
    let cospectral = generalized_cospectral(g, &h).map_err(EngineError::from)?;
    check(cospectral, || "mate is not generalized cospectral".into())?;

    if let Some(q) = &ce.q {
        verify_regular_orthogonal(q, g, &h).map_err(|e| Discrepancy(format!("Q: {e}")))?;
        check(ce.level.as_ref() == Some(&level(q)), || {
            "level mismatch".into()
        })?;
    }
    let non_isomorphic = match family {
        Family::Controllable => {
            let q = controllable_q(g, &h)?;
            check(ce.q.as_ref() == Some(&q), || "Q mismatch".into())?;
            let d_n = smith_normal_form(&walk_matrix(g), false).last().cloned();
            check(ce.d_n == d_n, || "d_n mismatch".into())?;
            !level(&q).is_one()
        }
        f if f.is_almost_controllable() => {
            let s = almost_controllable_solutions(g, &h)?;
            let q_ok = ce.q.as_ref().is_some_and(|q| *q == s.q0 || *q == s.q1);
            check(q_ok, || "Q is not one of the two solutions".into())?;
            let d_n = smith_normal_form(&w_delta(g, 0).map_err(EngineError::from)?, false)
                .last()
                .cloned();
            check(ce.d_n == d_n, || "d_n mismatch".into())?;
            !s.min_level().is_one()
        }
        _ => {
            check(g.order() <= MAX_ISOMORPHISM_ORDER, || {
                "mate cannot be checked at this order".into()
            })?;
            is_isomorphic(g, &h).map_err(EngineError::from)?.is_none()
        }
    };
    check(non_isomorphic, || "mate is isomorphic to the graph".into())?;
    if let (Some(l), Some(d)) = (&ce.level, &ce.d_n) {
        check(d.is_multiple_of(l), || "level does not divide d_n".into())?;
    }
    Ok(())
}

/// Integers travel as decimal strings so no JSON reader loses precision.
struct Dec<T>(T);

impl<T: Display> Serialize for Dec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de, T: FromStr> Deserialize<'de> for Dec<T>
where
    T::Err: Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Dec).map_err(D::Error::custom)
    }
}

pub(crate) mod dec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        Dec(v).serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Dec::<T>::deserialize(d).map(|x| x.0)
    }
}

pub(crate) mod dec_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Dec))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Ok(Vec::<Dec<T>>::deserialize(d)?
            .into_iter()
            .map(|x| x.0)
            .collect())
    }
}

pub(crate) mod dec_opt {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(Dec).serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Ok(Option::<Dec<T>>::deserialize(d)?.map(|x| x.0))
    }
}

pub(crate) mod dec_opt_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(
        v: &Option<Vec<T>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(Dec).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<Vec<T>>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Ok(Option::<Vec<Dec<T>>>::deserialize(d)?.map(|v| v.into_iter().map(|x| x.0).collect()))
    }
}

/// A rational matrix as rows of `"num/den"` strings.
pub(crate) mod rat_opt {
    use num_rational::BigRational;

    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<RatMatrix>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|q| {
                (0..q.rows())
                    .map(|i| (0..q.cols()).map(|j| Dec(&q[(i, j)])).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<RatMatrix>, D::Error> {
        let Some(rows) = Option::<Vec<Vec<Dec<BigRational>>>>::deserialize(d)? else {
            return Ok(None);
        };
        let n = rows.len();
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("ragged matrix"));
        }
        let data = rows.into_iter().flatten().map(|x| x.0).collect();
        Ok(Some(RatMatrix::from_vec(n, cols, data)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::decide_dgs;
    use crate::fixtures;

    #[test]
    fn round_trip_and_verify() {
        let g = fixtures::adjacent_twins_10();
        let c = decide_dgs(&g).unwrap();
        let back = DgsCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        verify_certificate(&back, &g).unwrap();
        assert!(c.to_json().contains("\"schema\": \"dgs-cert/1\""));
        assert!(c.to_json().contains("\"30469\""));
    }

    #[test]
    fn tampering_is_named() {
        let g = fixtures::adjacent_twins_10();
        let mut c = decide_dgs(&g).unwrap();
        c.evidence[0].lambda0 = 3;
        let e = verify_certificate(&c, &g).unwrap_err();
        assert!(e.0.contains("lambda0 mismatch"), "{e}");

        let mut c = decide_dgs(&g).unwrap();
        c.verdict = Verdict::DgsCertifiedExtended;
        assert!(verify_certificate(&c, &g)
            .unwrap_err()
            .0
            .contains("verdict"));

        let c = decide_dgs(&g).unwrap();
        let e = verify_certificate(&c, &fixtures::refuted_prime_13()).unwrap_err();
        assert_eq!(e.0, "graph mismatch");
    }

    #[test]
    fn rational_matrix_round_trip() {
        #[derive(Serialize, Deserialize)]
        struct Wrap {
            #[serde(with = "rat_opt")]
            q: Option<RatMatrix>,
        }
        let q = fixtures::level_three_q_9();
        let s = serde_json::to_string(&Wrap { q: Some(q.clone()) }).unwrap();
        assert!(s.contains("\"2/3\"") && s.contains("\"-1/3\""));
        let back: Wrap = serde_json::from_str(&s).unwrap();
        assert_eq!(back.q, Some(q));
    }
}
