//! Walk matrices and the matrices derived from them.
//!
//! For a graph with adjacency matrix `A` the walk matrix is
//! `W = [e, Ae, ..., A^(n-1) e]`. When `rank W = n - 1` the vector `xi` of
//! algebraic cofactors of the last column spans the rational kernel of
//! `W^T`, and `xi / 2^(floor(n/2) - 1)` is integral; replacing the last
//! column of `W` by `+-` that vector gives the nonsingular `W_0`, `W_1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{find_twins, Graph, GraphError, TwinInfo};
use crate::linalg::{
    bareiss_det, modp, nullspace_integer, nullspace_mod_p, rank_mod_p, rank_rational, residue,
    IntMatrix, LinalgError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("walk matrix has rank {rank}, expected n - 1 = {}", .n - 1)]
    NotAlmostControllable { rank: usize, n: usize },
    #[error("cofactor vector is not divisible by 2^{0}")]
    NonIntegralScaling(u32),
    #[error("graph has no twin vertices")]
    NoTwins,
    #[error(
        "kernel of the augmented walk matrix transpose mod {p} has dimension {dim}, expected 1"
    )]
    KernelDimension { p: u64, dim: usize },
    #[error("kernel generator mod {p} is not an eigenvector of the adjacency matrix")]
    NotEigenvector { p: u64 },
    #[error("W^T W~1 has an odd entry")]
    OddGramEntry,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `[e, Ae, ..., A^(k-1) e]` as columns, built by repeated multiplication.
pub fn walk_columns(g: &Graph, k: usize) -> Vec<Vec<BigInt>> {
    let a = g.adjacency_matrix();
    let mut cols = Vec::with_capacity(k);
    let mut cur = vec![BigInt::one(); g.order()];
    for _ in 0..k {
        let next = a.mul_vec(&cur);
        cols.push(std::mem::replace(&mut cur, next));
    }
    cols
}

pub fn walk_matrix(g: &Graph) -> IntMatrix {
    IntMatrix::from_columns(&walk_columns(g, g.order()))
}

/// `floor(n/2) - 1`, the power of two dividing every entry of `xi`.
pub fn xi_scale_exponent(n: usize) -> u32 {
    (n / 2).saturating_sub(1) as u32
}

fn cofactor_last_column(v: &IntMatrix, i: usize) -> Result<BigInt, LinalgError> {
    let n = v.rows();
    let minor = bareiss_det(&v.without_row(i))?;
    // (-1)^(n + i) with 1-based row index i + 1
    Ok(if (n + i + 1).is_multiple_of(2) {
        minor
    } else {
        -minor
    })
}

fn require_almost_controllable(w: &IntMatrix) -> Result<(), WalkError> {
    let n = w.rows();
    let rank = rank_rational(w);
    if n == 0 || rank + 1 != n {
        return Err(WalkError::NotAlmostControllable { rank, n });
    }
    Ok(())
}

/// Cofactors of the last column of `W`, computed from one primitive kernel
/// vector of `W^T` and a single cofactor that fixes scale and sign.
pub fn xi_vector(g: &Graph) -> Result<Vec<BigInt>, WalkError> {
    let w = walk_matrix(g);
    require_almost_controllable(&w)?;
    xi_from_walk(&w)
}

fn xi_from_walk(w: &IntMatrix) -> Result<Vec<BigInt>, WalkError> {
    let n = w.rows();
    let kernel = nullspace_integer(&w.transpose());
    let [k] = kernel.as_slice() else {
        return Err(WalkError::NotAlmostControllable {
            rank: n - kernel.len(),
            n,
        });
    };
    let v = w.first_columns(n - 1);
    // the cofactor at a nonzero kernel entry is itself nonzero
    let i = (0..n)
        .filter(|&i| !k[i].is_zero())
        .min_by_key(|&i| k[i].abs())
        .expect("kernel vector is nonzero");
    let xi_i = cofactor_last_column(&v, i)?;
    let t = &xi_i / &k[i];
    debug_assert_eq!(&t * &k[i], xi_i);
    Ok(k.iter().map(|x| x * &t).collect())
}

/// Cofactors of the last column of `W`, one determinant per row. Slow;
/// kept as an independent check on [`xi_vector`].
pub fn xi_by_cofactors(g: &Graph) -> Result<Vec<BigInt>, WalkError> {
    let w = walk_matrix(g);
    require_almost_controllable(&w)?;
    let v = w.first_columns(g.order() - 1);
    (0..g.order())
        .map(|i| cofactor_last_column(&v, i).map_err(WalkError::from))
        .collect()
}

/// `xi / 2^(floor(n/2) - 1)`.
pub fn xi_scaled(xi: &[BigInt]) -> Result<Vec<BigInt>, WalkError> {
    let e = xi_scale_exponent(xi.len());
    let d = BigInt::one() << e;
    if xi.iter().any(|x| !(x % &d).is_zero()) {
        return Err(WalkError::NonIntegralScaling(e));
    }
    Ok(xi.iter().map(|x| x / &d).collect())
}

/// `[e, Ae, ..., A^(n-2) e, (-1)^delta xi / 2^(floor(n/2) - 1)]`.
pub fn w_delta(g: &Graph, delta: u8) -> Result<IntMatrix, WalkError> {
    assert!(delta <= 1, "delta is 0 or 1");
    let n = g.order();
    let mut cols = walk_columns(g, n);
    let w = IntMatrix::from_columns(&cols);
    require_almost_controllable(&w)?;
    let mut last = xi_scaled(&xi_from_walk(&w)?)?;
    if delta == 1 {
        last.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    cols[n - 1] = last;
    Ok(IntMatrix::from_columns(&cols))
}

/// `[e, Ae, ..., A^(n-2) e, alpha]` where `alpha` is the twin vector.
pub fn w_hat(g: &Graph) -> Result<IntMatrix, WalkError> {
    let twins = find_twins(g)?.ok_or(WalkError::NoTwins)?;
    Ok(w_hat_with(g, &twins))
}

fn w_hat_with(g: &Graph, twins: &TwinInfo) -> IntMatrix {
    let n = g.order();
    let mut cols = walk_columns(g, n - 1);
    cols.push(twins.alpha.clone());
    IntMatrix::from_columns(&cols)
}

/// Mod-p eigendata attached to an odd prime `p` dividing `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeContext {
    pub p: u64,
    /// generator of the kernel of `W_hat^T` mod p, last nonzero entry 1
    pub beta: Vec<u64>,
    /// `A beta = lambda0 beta (mod p)`, with `lambda0` in `0..p`
    pub lambda0: u64,
}

impl PrimeContext {
    pub fn beta_int(&self) -> Vec<BigInt> {
        self.beta.iter().map(|&x| BigInt::from(x)).collect()
    }
}

/// Normalised kernel generator of `W_hat^T` mod `p` and its eigenvalue.
pub fn beta_lambda0(g: &Graph, p: u64) -> Result<PrimeContext, WalkError> {
    let twins = find_twins(g)?.ok_or(WalkError::NoTwins)?;
    let w_hat = w_hat_with(g, &twins);
    let kernel = nullspace_mod_p(&w_hat.transpose(), p)?;
    let [v] = kernel.as_slice() else {
        return Err(WalkError::KernelDimension {
            p,
            dim: kernel.len(),
        });
    };
    let last = *v
        .iter()
        .rev()
        .find(|&&x| x != 0)
        .expect("kernel vector is nonzero");
    let s = modp::inv_mod(last, p);
    let beta: Vec<u64> = v.iter().map(|&x| modp::mul_mod(x, s, p)).collect();

    let a = g.adjacency_matrix();
    let beta_int: Vec<BigInt> = beta.iter().map(|&x| BigInt::from(x)).collect();
    let image: Vec<u64> = a.mul_vec(&beta_int).iter().map(|x| residue(x, p)).collect();
    let j = beta.iter().position(|&x| x != 0).expect("nonzero");
    let lambda0 = modp::mul_mod(image[j], modp::inv_mod(beta[j], p), p);
    let proportional = image
        .iter()
        .zip(&beta)
        .all(|(&y, &b)| y == modp::mul_mod(lambda0, b, p));
    if !proportional {
        return Err(WalkError::NotEigenvector { p });
    }
    Ok(PrimeContext { p, beta, lambda0 })
}

/// The pair `(W~, W~1)` of `n x floor(n/2)` matrices: for even `n`,
/// `W~ = [e, ..., A^(k-1) e]` and `W~1 = [e, A^2 e, ..., A^(2k-2) e]`;
/// for odd `n`, `W~ = [Ae, ..., A^k e]` and `W~1 = [A^2 e, ..., A^(2k) e]`.
pub fn tilde_matrices(g: &Graph) -> (IntMatrix, IntMatrix) {
    let n = g.order();
    let k = n / 2;
    let cols = walk_columns(g, 2 * k + 1);
    let pick = |powers: Vec<usize>| -> IntMatrix {
        let chosen: Vec<Vec<BigInt>> = powers.into_iter().map(|i| cols[i].clone()).collect();
        if chosen.is_empty() {
            IntMatrix::zeros(n, 0)
        } else {
            IntMatrix::from_columns(&chosen)
        }
    };
    if n.is_multiple_of(2) {
        (
            pick((0..k).collect()),
            pick((0..k).map(|i| 2 * i).collect()),
        )
    } else {
        (
            pick((1..=k).collect()),
            pick((1..=k).map(|i| 2 * i).collect()),
        )
    }
}

/// Whether `W^T W~1 / 2` has full column rank `floor(n/2)` over F_2.
pub fn fullbr_check(g: &Graph) -> Result<bool, WalkError> {
    let w = walk_matrix(g);
    let (_, w1) = tilde_matrices(g);
    let gram = w.transpose().mul(&w1)?;
    let two = BigInt::from(2);
    if gram.entries().iter().any(|x| !(x % &two).is_zero()) {
        return Err(WalkError::OddGramEntry);
    }
    let half = IntMatrix::from_vec(
        gram.rows(),
        gram.cols(),
        gram.entries().iter().map(|x| x / &two).collect(),
    );
    Ok(rank_mod_p(&half, 2)? == g.order() / 2)
}

/// Everything derived from the walk matrix of one graph.
#[derive(Clone, Debug)]
pub struct WalkBundle {
    pub graph: Graph,
    pub w: IntMatrix,
    /// first `n - 1` columns of `w`
    pub v: IntMatrix,
    pub rank_q: usize,
    pub rank_2: usize,
    /// present when `rank_q == n - 1`
    pub xi: Option<Vec<BigInt>>,
    pub xi_scaled: Option<Vec<BigInt>>,
    pub twins: Option<TwinInfo>,
}

impl WalkBundle {
    pub fn new(g: &Graph) -> Result<Self, WalkError> {
        let n = g.order();
        let w = walk_matrix(g);
        let v = w.first_columns(n.saturating_sub(1));
        let rank_q = rank_rational(&w);
        let rank_2 = rank_mod_p(&w, 2)?;
        let (xi, xi_scaled) = if n > 0 && rank_q + 1 == n {
            let xi = xi_from_walk(&w)?;
            let scaled = xi_scaled(&xi)?;
            (Some(xi), Some(scaled))
        } else {
            (None, None)
        };
        let twins = find_twins(g).ok().flatten();
        Ok(WalkBundle {
            graph: g.clone(),
            w,
            v,
            rank_q,
            rank_2,
            xi,
            xi_scaled,
            twins,
        })
    }

    pub fn is_almost_controllable(&self) -> bool {
        self.xi.is_some()
    }
}
