use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::certificate::{dec, dec_opt, dec_opt_vec, dec_vec, rat_opt, CERT_SCHEMA};
use super::similarity::{almost_controllable_solutions, controllable_q};
use super::{classify, invariant, EngineError, Family, GraphClass};
use crate::graph::MAX_ISOMORPHISM_ORDER;
use crate::graph::{find_twins, generalized_cospectral, is_isomorphic, Graph, TwinInfo};
use crate::linalg::{dot, factorize, modp, smith_normal_form, sqrt_mod_p, LinalgError, RatMatrix};
use crate::walk::{beta_lambda0, fullbr_check, w_delta, walk_matrix, PrimeContext, WalkError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "DGS_certified")]
    DgsCertified,
    #[serde(rename = "DGS_certified_extended")]
    DgsCertifiedExtended,
    #[serde(rename = "NOT_DGS")]
    NotDgs,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Verdict {
    pub fn is_certified(self) -> bool {
        matches!(self, Verdict::DgsCertified | Verdict::DgsCertifiedExtended)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::DgsCertified => "DGS_certified",
            Verdict::DgsCertifiedExtended => "DGS_certified_extended",
            Verdict::NotDgs => "NOT_DGS",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of comparing `lambda1` with `lambda0(G; p)` modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AddconRecord {
    pub lambda0: u64,
    pub lambda1: i64,
    pub holds: bool,
}

/// Which necessary condition for `p | level(Q)` failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Refutation {
    /// `-((p+1)/2) beta^T beta` is not a square mod p
    NonResidue,
    /// `gamma0^T (A - lambda0 I) gamma0` is not divisible by `p^2`
    QuadraticForm,
}

/// The quadratic-residue and quadratic-form tests at a prime where
/// addcon fails. `refuted_by` is `None` when both conditions hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainpRecord {
    #[serde(with = "dec")]
    pub qr_value: u64,
    #[serde(with = "dec_opt", default)]
    pub c0: Option<u64>,
    #[serde(with = "dec_opt_vec", default)]
    pub gamma0: Option<Vec<BigInt>>,
    /// integer representative of `lambda0` used in the quadratic form
    #[serde(with = "dec_opt", default)]
    pub lambda0_lift: Option<i64>,
    #[serde(with = "dec_opt", default)]
    pub quadform_mod_p2: Option<BigInt>,
    pub refuted_by: Option<Refutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEvidence {
    #[serde(with = "dec")]
    pub p: u64,
    #[serde(with = "dec_vec")]
    pub beta: Vec<u64>,
    #[serde(with = "dec")]
    pub lambda0: u64,
    #[serde(with = "dec")]
    pub lambda1: i64,
    pub addcon_holds: bool,
    pub mainp: Option<MainpRecord>,
}

impl PrimeEvidence {
    fn settled(&self) -> bool {
        self.addcon_holds || self.mainp.as_ref().is_some_and(|m| m.refuted_by.is_some())
    }
}

/// A verified generalized-cospectral, non-isomorphic mate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// graph6 of the mate
    pub mate: String,
    /// `Q` with `Q^T A(G) Q = A(mate)`; absent when the graph is neither
    /// controllable nor almost controllable
    #[serde(with = "rat_opt", default)]
    pub q: Option<RatMatrix>,
    #[serde(with = "dec_opt", default)]
    pub level: Option<BigInt>,
    /// last invariant factor of `W_0(G)` (of `W(G)` when controllable),
    /// which the level divides
    #[serde(with = "dec_opt", default)]
    pub d_n: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgsCertificate {
    pub schema: String,
    /// graph6 of the graph the certificate is about
    pub graph: String,
    pub n: usize,
    pub verdict: Verdict,
    pub family: Family,
    pub in_f_n: bool,
    #[serde(with = "dec_opt", default)]
    pub b: Option<BigInt>,
    /// invariant factors of `W(G)`
    #[serde(with = "dec_vec")]
    pub snf: Vec<BigInt>,
    pub fullbr: Option<bool>,
    pub evidence: Vec<PrimeEvidence>,
    pub counterexample: Option<Counterexample>,
    /// why the verdict is `UNKNOWN`
    pub reason: Option<String>,
    #[serde(default)]
    pub timestamp: Option<String>,
}

impl DgsCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn lambda1_residue(lambda1: i64, p: u64) -> u64 {
    if lambda1 < 0 {
        p - 1
    } else {
        lambda1 as u64 % p
    }
}

fn twins_of(g: &Graph) -> Result<TwinInfo, EngineError> {
    find_twins(g)?.ok_or(EngineError::Walk(WalkError::NoTwins))
}

fn addcon_with(ctx: &PrimeContext, twins: &TwinInfo) -> AddconRecord {
    AddconRecord {
        lambda0: ctx.lambda0,
        lambda1: twins.lambda1,
        holds: lambda1_residue(twins.lambda1, ctx.p) != ctx.lambda0,
    }
}

/// Whether `lambda1 != lambda0(G; p) (mod p)` for an odd prime `p | b`.
pub fn check_addcon(g: &Graph, p: u64) -> Result<AddconRecord, EngineError> {
    let twins = twins_of(g)?;
    let ctx = beta_lambda0(g, p)?;
    Ok(addcon_with(&ctx, &twins))
}

fn quadform_mod_p2(a: &crate::linalg::IntMatrix, gamma: &[BigInt], lambda: i64, p: u64) -> BigInt {
    let ag = a.mul_vec(gamma);
    let q = dot(gamma, &ag) - BigInt::from(lambda) * dot(gamma, gamma);
    let p2 = BigInt::from(p) * BigInt::from(p);
    q.mod_floor(&p2)
}

fn mainp_with(g: &Graph, twins: &TwinInfo, ctx: &PrimeContext) -> Result<MainpRecord, EngineError> {
    let p = ctx.p;
    if addcon_with(ctx, twins).holds {
        return Err(EngineError::AddconHolds(p));
    }
    let beta = ctx.beta_int();
    let btb = modp::residue(&dot(&beta, &beta), p);
    // (p + 1) / 2 is the inverse of 2
    let half = p.div_ceil(2);
    let qr_value = (p - modp::mul_mod(half, btb, p)) % p;
    let Some((c0, _)) = sqrt_mod_p(qr_value, p) else {
        return Ok(MainpRecord {
            qr_value,
            c0: None,
            gamma0: None,
            lambda0_lift: None,
            quadform_mod_p2: None,
            refuted_by: Some(Refutation::NonResidue),
        });
    };
    let c0_int = BigInt::from(c0);
    let gamma0: Vec<BigInt> = beta
        .iter()
        .zip(&twins.alpha)
        .map(|(b, a)| b + &c0_int * a)
        .collect();
    let a = g.adjacency_matrix();
    // the two integer lifts of lambda0 give the same residue mod p^2
    let lift = twins.lambda1;
    let low = quadform_mod_p2(&a, &gamma0, ctx.lambda0 as i64, p);
    let high = quadform_mod_p2(&a, &gamma0, ctx.lambda0 as i64 - p as i64, p);
    if low != high {
        return Err(invariant(format!(
            "quadratic form depends on the lift of lambda0 at p = {p}"
        )));
    }
    let refuted_by = (!low.is_zero()).then_some(Refutation::QuadraticForm);
    Ok(MainpRecord {
        qr_value,
        c0: Some(c0),
        gamma0: Some(gamma0),
        lambda0_lift: Some(lift),
        quadform_mod_p2: Some(low),
        refuted_by,
    })
}

/// Tests the necessary conditions for `p | level(Q)` at a prime where
/// addcon fails; any failure rules `p` out of every level.
pub fn mainp_refute(g: &Graph, p: u64) -> Result<MainpRecord, EngineError> {
    let twins = twins_of(g)?;
    let ctx = beta_lambda0(g, p)?;
    mainp_with(g, &twins, &ctx)
}

fn prime_evidence(g: &Graph, twins: &TwinInfo, p: u64) -> Result<PrimeEvidence, EngineError> {
    let ctx = beta_lambda0(g, p)?;
    let addcon = addcon_with(&ctx, twins);
    let mainp = if addcon.holds {
        None
    } else {
        Some(mainp_with(g, twins, &ctx)?)
    };
    Ok(PrimeEvidence {
        p,
        beta: ctx.beta,
        lambda0: ctx.lambda0,
        lambda1: twins.lambda1,
        addcon_holds: addcon.holds,
        mainp,
    })
}

/// Everything in a certificate except the mate search.
pub(super) struct Assessment {
    pub class: GraphClass,
    pub fullbr: Option<bool>,
    pub evidence: Vec<PrimeEvidence>,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

pub(super) fn assess(g: &Graph) -> Result<Assessment, EngineError> {
    let class = classify(g)?;
    let unknown = |class: GraphClass, fullbr, evidence, reason: String| Assessment {
        class,
        fullbr,
        evidence,
        verdict: Verdict::Unknown,
        reason: Some(reason),
    };
    let Some(b) = class.b.clone() else {
        let reason = format!("not in F_n (family {})", class.family);
        return Ok(unknown(class, None, Vec::new(), reason));
    };
    let twins = class.twins.clone().expect("F_n graphs have twins");
    if !fullbr_check(g)? {
        return Err(invariant("(W^T W~1)/2 lacks full column rank over F_2"));
    }
    let primes = match factorize(&b) {
        Ok(f) => f.odd_primes(),
        Err(LinalgError::FactorLimit(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let Some(primes) = primes else {
        let reason = format!("b = {b} is outside the supported factoring range");
        return Ok(unknown(class, Some(true), Vec::new(), reason));
    };
    let evidence = primes
        .iter()
        .map(|&p| prime_evidence(g, &twins, p))
        .collect::<Result<Vec<_>, _>>()?;
    let open: Vec<String> = evidence
        .iter()
        .filter(|e| !e.settled())
        .map(|e| e.p.to_string())
        .collect();
    if !open.is_empty() {
        let reason = format!("no refutation at p = {}", open.join(", "));
        return Ok(unknown(class, Some(true), evidence, reason));
    }
    let verdict = if evidence.iter().all(|e| e.addcon_holds) {
        Verdict::DgsCertified
    } else {
        Verdict::DgsCertifiedExtended
    };
    Ok(Assessment {
        class,
        fullbr: Some(true),
        evidence,
        verdict,
        reason: None,
    })
}

/// Checks that `h` is a generalized-cospectral mate of `g` that is not
/// isomorphic to it, and returns the witness data.
///
/// For controllable and almost controllable `g` every isomorphism is one
/// of the computed rational orthogonal solutions, so `h` is isomorphic to
/// `g` exactly when a solution has level 1; the backtracking oracle is
/// consulted as a cross-check on small orders.
pub(super) fn mate_witness(
    g: &Graph,
    family: Family,
    h: &Graph,
) -> Result<Option<Counterexample>, EngineError> {
    if h.order() != g.order() || !generalized_cospectral(g, h)? {
        return Ok(None);
    }
    let small = g.order() <= MAX_ISOMORPHISM_ORDER;
    let (q, level, d_n) = match family {
        Family::Controllable => {
            let q = controllable_q(g, h)?;
            let level = q.denominator_lcm();
            let d_n = smith_normal_form(&walk_matrix(g), false).last().cloned();
            (Some(q), Some(level), d_n)
        }
        f if f.is_almost_controllable() => {
            let s = almost_controllable_solutions(g, h)?;
            let level = s.min_level().clone();
            let q = if s.level0 <= s.level1 { s.q0 } else { s.q1 };
            let d_n = smith_normal_form(&w_delta(g, 0)?, false).last().cloned();
            (Some(q), Some(level), d_n)
        }
        _ => (None, None, None),
    };
    let non_isomorphic = match &level {
        Some(l) => {
            let by_level = !l.is_one();
            if small && by_level != is_isomorphic(g, h)?.is_none() {
                return Err(invariant("level test and isomorphism oracle disagree"));
            }
            by_level
        }
        None if small => is_isomorphic(g, h)?.is_none(),
        None => false,
    };
    if !non_isomorphic {
        return Ok(None);
    }
    if let (Some(l), Some(d)) = (&level, &d_n) {
        if !d.is_multiple_of(l) {
            return Err(invariant(format!("level {l} does not divide d_n = {d}")));
        }
    }
    Ok(Some(Counterexample {
        mate: h.to_graph6(),
        q,
        level,
        d_n,
    }))
}

/// Decides DGS without a mate search.
pub fn decide_dgs(g: &Graph) -> Result<DgsCertificate, EngineError> {
    decide_dgs_with_mates(g, &[])
}

/// Decides DGS; when no certificate applies, searches `pool` for a
/// verified mate and reports `NOT_DGS` only if one is found.
pub fn decide_dgs_with_mates(g: &Graph, pool: &[Graph]) -> Result<DgsCertificate, EngineError> {
    let a = assess(g)?;
    let mut verdict = a.verdict;
    let mut reason = a.reason;
    let mut counterexample = None;
    if verdict == Verdict::Unknown {
        for h in pool {
            if let Some(c) = mate_witness(g, a.class.family, h)? {
                counterexample = Some(c);
                verdict = Verdict::NotDgs;
                reason = None;
                break;
            }
        }
    }
    Ok(DgsCertificate {
        schema: CERT_SCHEMA.to_string(),
        graph: g.to_graph6(),
        n: g.order(),
        verdict,
        family: a.class.family,
        in_f_n: a.class.in_f_n,
        b: a.class.b,
        snf: a.class.snf.invariant_factors,
        fullbr: a.fullbr,
        evidence: a.evidence,
        counterexample,
        reason,
        timestamp: None,
    })
}
