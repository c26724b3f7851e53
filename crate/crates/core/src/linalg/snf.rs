//! Smith normal form over the integers.
//!
//! The reduction repeatedly moves the entry of least absolute value in the
//! trailing submatrix to the pivot position, clears its row and column by
//! floor-division steps, and folds in any row whose entries the pivot does
//! not divide. Every step is a unimodular row or column operation, so the
//! optional transforms are tracked by replaying the same operations on
//! identity matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Invariant factors `d_1 | d_2 | ... ` of an integer matrix, with the
/// unimodular pair `(U, V)` satisfying `U * M * V = diag(d)` when requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rows: usize,
    pub cols: usize,
    pub invariant_factors: Vec<BigInt>,
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

/// Quantities that follow from the invariant factors of a square matrix alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfQueries {
    /// `|det M| = d_1 d_2 ... d_n`
    pub det_abs: BigInt,
    /// number of invariant factors not divisible by `p`
    pub p_rank: usize,
    /// `p^(n - p_rank)`, which always divides `det M`
    pub det_p_power_bound: BigInt,
    /// whether `M x = 0 (mod p^2)` has a solution with `x != 0 (mod p)`
    pub has_p2_kernel_vector: bool,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }

    /// The last invariant factor (`d_n` for a square matrix).
    pub fn last(&self) -> Option<&BigInt> {
        self.invariant_factors.last()
    }

    /// The diagonal matrix `diag(d)` with the shape of the original matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.invariant_factors.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    pub fn queries(&self, p: u64) -> SnfQueries {
        let pb = BigInt::from(p);
        let n = self.invariant_factors.len();
        let det_abs = self.invariant_factors.iter().product();
        let p_rank = self
            .invariant_factors
            .iter()
            .filter(|d| !d.is_multiple_of(&pb))
            .count();
        let det_p_power_bound = num_traits::pow(pb.clone(), n - p_rank);
        let p2 = &pb * &pb;
        let has_p2_kernel_vector = self
            .invariant_factors
            .last()
            .is_some_and(|d| d.is_multiple_of(&p2));
        SnfQueries {
            det_abs,
            p_rank,
            det_p_power_bound,
            has_p2_kernel_vector,
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut tf = with_transforms.then(|| (IntMatrix::identity(rows), IntMatrix::identity(cols)));
    let steps = rows.min(cols);

    for t in 0..steps {
        while let Some((pi, pj)) = smallest_nonzero(&a, t) {
            swap_rows(&mut a, &mut tf, t, pi);
            swap_cols(&mut a, &mut tf, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                add_row(&mut a, &mut tf, i, t, &-q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                add_col(&mut a, &mut tf, j, t, &-q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => add_row(&mut a, &mut tf, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = tf.as_mut() {
                u.negate_row(t);
            }
        }
    }

    SnfResult {
        rows,
        cols,
        invariant_factors: (0..steps).map(|i| a[(i, i)].clone()).collect(),
        transforms: tf,
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                let done = ax.is_one();
                best = Some(((i, j), ax));
                if done {
                    return best.map(|(pos, _)| pos);
                }
            }
        }
    }
    best.map(|(pos, _)| pos)
}

type Transforms = Option<(IntMatrix, IntMatrix)>;

fn swap_rows(a: &mut IntMatrix, tf: &mut Transforms, x: usize, y: usize) {
    a.swap_rows(x, y);
    if let Some((u, _)) = tf {
        u.swap_rows(x, y);
    }
}

fn swap_cols(a: &mut IntMatrix, tf: &mut Transforms, x: usize, y: usize) {
    a.swap_cols(x, y);
    if let Some((_, v)) = tf {
        v.swap_cols(x, y);
    }
}

fn add_row(a: &mut IntMatrix, tf: &mut Transforms, target: usize, source: usize, f: &BigInt) {
    a.add_row_multiple(target, source, f);
    if let Some((u, _)) = tf {
        u.add_row_multiple(target, source, f);
    }
}

fn add_col(a: &mut IntMatrix, tf: &mut Transforms, target: usize, source: usize, f: &BigInt) {
    a.add_col_multiple(target, source, f);
    if let Some((_, v)) = tf {
        v.add_col_multiple(target, source, f);
    }
}
