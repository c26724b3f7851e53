use num_bigint::BigInt;

use super::{Graph, GraphError};

/// A vertex pair whose transposition is an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinInfo {
    /// smaller vertex (0-based)
    pub tau: usize,
    /// larger vertex (0-based)
    pub tau_prime: usize,
    pub adjacent: bool,
    /// eigenvalue of `alpha`: -1 when the twins are adjacent, 0 otherwise
    pub lambda1: i64,
    /// `-1` at `tau`, `+1` at `tau_prime`, zero elsewhere
    pub alpha: Vec<BigInt>,
}

impl TwinInfo {
    fn new(g: &Graph, tau: usize, tau_prime: usize) -> Self {
        let adjacent = g.has_edge(tau, tau_prime);
        let mut alpha = vec![BigInt::default(); g.order()];
        alpha[tau] = BigInt::from(-1);
        alpha[tau_prime] = BigInt::from(1);
        TwinInfo {
            tau,
            tau_prime,
            adjacent,
            lambda1: if adjacent { -1 } else { 0 },
            alpha,
        }
    }

    /// The transposition as a vertex permutation.
    pub fn transposition(&self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(self.tau, self.tau_prime);
        p
    }
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let mask = !(1u64 << u | 1u64 << v);
    g.neighbours(u) & mask == g.neighbours(v) & mask
}

/// The unique pair `{u, v}` with `N(u) \ {v} = N(v) \ {u}`.
///
/// Returns `Ok(None)` if there is no such pair and an error if there are
/// several; a graph whose walk matrix has rank `n - 1` never has more than one.
pub fn find_twins(g: &Graph) -> Result<Option<TwinInfo>, GraphError> {
    let n = g.order();
    let mut found: Option<(usize, usize)> = None;
    for u in 0..n {
        for v in u + 1..n {
            if are_twins(g, u, v) {
                if let Some(first) = found {
                    return Err(GraphError::MultipleTwins(first, (u, v)));
                }
                found = Some((u, v));
            }
        }
    }
    Ok(found.map(|(u, v)| TwinInfo::new(g, u, v)))
}
