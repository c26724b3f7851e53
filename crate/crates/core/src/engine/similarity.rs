use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{invariant, EngineError};
use crate::graph::{generalized_cospectral, Graph};
use crate::linalg::{rank_rational, RatMatrix};
use crate::walk::{w_delta, walk_matrix};

/// Least positive `k` with `k * q` integral.
pub fn level(q: &RatMatrix) -> BigInt {
    q.denominator_lcm()
}

/// Checks `Q^T Q = I`, `Q e = e` and `Q^T A(g) Q = A(h)` exactly, naming
/// the first identity that fails.
pub fn verify_regular_orthogonal(q: &RatMatrix, g: &Graph, h: &Graph) -> Result<(), String> {
    let n = g.order();
    if q.rows() != n || q.cols() != n || h.order() != n {
        return Err("dimension mismatch".into());
    }
    let qt = q.transpose();
    if qt.mul(q).map_err(|e| e.to_string())? != RatMatrix::identity(n) {
        return Err("Q^T Q != I".into());
    }
    if q.row_sums().iter().any(|s| !s.is_one()) {
        return Err("Q e != e".into());
    }
    let ag = RatMatrix::from(&g.adjacency_matrix());
    let ah = RatMatrix::from(&h.adjacency_matrix());
    let conj = qt
        .mul(&ag)
        .and_then(|m| m.mul(q))
        .map_err(|e| e.to_string())?;
    if conj != ah {
        return Err("Q^T A(G) Q != A(H)".into());
    }
    Ok(())
}

/// The unique regular rational orthogonal `Q = W(g) W(h)^-1` with
/// `Q^T A(g) Q = A(h)`, for controllable `g`.
pub fn controllable_q(g: &Graph, h: &Graph) -> Result<RatMatrix, EngineError> {
    if !generalized_cospectral(g, h)? {
        return Err(EngineError::NotCospectral);
    }
    let wg = walk_matrix(g);
    if rank_rational(&wg) != g.order() {
        return Err(EngineError::NotControllable);
    }
    let wh_inv = RatMatrix::from(&walk_matrix(h)).inverse()?;
    let q = RatMatrix::from(&wg).mul(&wh_inv)?;
    verify_regular_orthogonal(&q, g, h).map_err(invariant)?;
    Ok(q)
}

/// The two regular rational orthogonal matrices carrying an almost
/// controllable graph to a generalized cospectral one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOrthogonalSolution {
    pub q0: RatMatrix,
    pub q1: RatMatrix,
    pub level0: BigInt,
    pub level1: BigInt,
}

impl RationalOrthogonalSolution {
    /// The smaller of the two levels; `1` exactly when `h` is isomorphic
    /// to `g`, since every isomorphism is one of the two solutions.
    pub fn min_level(&self) -> &BigInt {
        if self.level0 <= self.level1 {
            &self.level0
        } else {
            &self.level1
        }
    }
}

/// `Q_0 = W_0(g) W_0(h)^-1` and `Q_1 = W_1(g) W_0(h)^-1`, both verified.
pub fn almost_controllable_solutions(
    g: &Graph,
    h: &Graph,
) -> Result<RationalOrthogonalSolution, EngineError> {
    if !generalized_cospectral(g, h)? {
        return Err(EngineError::NotCospectral);
    }
    let n = g.order();
    if n == 0 || rank_rational(&walk_matrix(g)) + 1 != n {
        return Err(EngineError::NotAlmostControllable);
    }
    let wh_inv = RatMatrix::from(&w_delta(h, 0)?).inverse()?;
    let q0 = RatMatrix::from(&w_delta(g, 0)?).mul(&wh_inv)?;
    let q1 = RatMatrix::from(&w_delta(g, 1)?).mul(&wh_inv)?;
    verify_regular_orthogonal(&q0, g, h).map_err(|e| invariant(format!("Q0: {e}")))?;
    verify_regular_orthogonal(&q1, g, h).map_err(|e| invariant(format!("Q1: {e}")))?;
    if q0 == q1 {
        return Err(invariant("Q0 = Q1"));
    }
    Ok(RationalOrthogonalSolution {
        level0: level(&q0),
        level1: level(&q1),
        q0,
        q1,
    })
}

/// The permutation matrix with `P[i][map[i]] = 1`.
pub fn permutation_matrix(map: &[usize]) -> RatMatrix {
    let n = map.len();
    let mut p = RatMatrix::zeros(n, n);
    for (i, &j) in map.iter().enumerate() {
        p[(i, j)] = BigRational::one();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::is_isomorphic;
    use crate::linalg::IntMatrix;

    fn mate_9() -> Graph {
        let g = fixtures::level_three_mate_9();
        let q = fixtures::level_three_q_9();
        let a = RatMatrix::from(&g.adjacency_matrix());
        let b = q.transpose().mul(&a).unwrap().mul(&q).unwrap();
        Graph::from_adjacency(&b.scaled_to_integer(&BigInt::one()).unwrap()).unwrap()
    }

    #[test]
    fn printed_level_three_matrix() {
        let g = fixtures::level_three_mate_9();
        let q = fixtures::level_three_q_9();
        let h = mate_9();
        verify_regular_orthogonal(&q, &g, &h).unwrap();
        assert_eq!(level(&q), BigInt::from(3));
        assert!(generalized_cospectral(&g, &h).unwrap());
        assert!(is_isomorphic(&g, &h).unwrap().is_none());

        let s = almost_controllable_solutions(&g, &h).unwrap();
        assert_eq!(
            (s.level0.clone(), s.level1.clone()),
            (BigInt::from(3), BigInt::from(3))
        );
        // the twin transposition swaps the two solutions
        let p = permutation_matrix(&[1, 0, 2, 3, 4, 5, 6, 7, 8]);
        assert!(s.q0 == q || s.q1 == q);
        assert_eq!(p.mul(&s.q0).unwrap(), s.q1);
    }

    #[test]
    fn k2_with_itself() {
        let k2 = Graph::complete(2);
        let s = almost_controllable_solutions(&k2, &k2).unwrap();
        let swap = permutation_matrix(&[1, 0]);
        let id = RatMatrix::identity(2);
        assert!((s.q0 == id && s.q1 == swap) || (s.q0 == swap && s.q1 == id));
        assert_eq!((s.level0, s.level1), (BigInt::one(), BigInt::one()));
    }

    #[test]
    fn pendant_twins_with_itself() {
        let g = fixtures::pendant_twins_5();
        let s = almost_controllable_solutions(&g, &g).unwrap();
        let id = RatMatrix::identity(5);
        assert_eq!([&s.q0, &s.q1].iter().filter(|q| ***q == id).count(), 1);
    }

    #[test]
    fn controllable_relabelling_gives_permutation() {
        // smallest asymmetric graphs live on six vertices
        let g = crate::graph::enumerate_all_graphs(6)
            .unwrap()
            .into_iter()
            .find(|g| rank_rational(&walk_matrix(g)) == 6)
            .expect("a controllable graph of order 6");
        let perm = [3, 5, 0, 1, 4, 2];
        let h = g.relabel(&perm);
        let q = controllable_q(&g, &h).unwrap();
        // relabel sends v to perm[v], so A(h) = P^T A(g) P with P[v][perm[v]] = 1
        assert_eq!(q, permutation_matrix(&perm));
        assert_eq!(controllable_q(&g, &g).unwrap(), RatMatrix::identity(6));
        assert_eq!(level(&q), BigInt::one());
        let int_q = q.scaled_to_integer(&BigInt::one()).unwrap();
        assert_eq!(
            int_q.transpose().mul(&int_q).unwrap(),
            IntMatrix::identity(6)
        );
    }

    #[test]
    fn rejects_non_cospectral() {
        assert_eq!(
            almost_controllable_solutions(&Graph::complete(2), &Graph::empty(2)),
            Err(EngineError::NotCospectral)
        );
        assert_eq!(
            controllable_q(&Graph::path(4), &Graph::path(4)),
            Err(EngineError::NotControllable)
        );
    }
}
