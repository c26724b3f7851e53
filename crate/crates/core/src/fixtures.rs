//! Worked graphs with known walk-matrix invariants, used by tests, the
//! acceptance suite and the CLI documentation.

use crate::graph::Graph;
use crate::linalg::RatMatrix;
use num_rational::BigRational;

fn from_rows(rows: &[&str]) -> Graph {
    Graph::from_matrix_str(&rows.join(";")).expect("fixture matrices are valid")
}

/// Order 5: a path 1-2-3 with two pendant vertices 4, 5 on vertex 3.
/// Walk-matrix rank 4; cofactor vector (0, 0, 0, 2, -2).
pub fn pendant_twins_5() -> Graph {
    from_rows(&["01000", "10100", "01011", "00100", "00100"])
}

/// Order 9, twins {1, 2}; SNF of W is diag(1,1,1,1,1,2,2,606,0). It has a
/// non-isomorphic generalized-cospectral mate reached by a level-3 matrix
/// ([`level_three_q_9`]).
pub fn level_three_mate_9() -> Graph {
    from_rows(&[
        "010011110",
        "100011110",
        "000010011",
        "000001000",
        "111000100",
        "110100110",
        "110011001",
        "111001001",
        "001000110",
    ])
}

/// Regular rational orthogonal matrix of level 3 carrying
/// [`level_three_mate_9`] to its mate.
pub fn level_three_q_9() -> RatMatrix {
    let rows: [[i64; 9]; 9] = [
        [2, -1, -1, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 3, 0, 0],
        [-1, 2, -1, 1, 1, 1, 0, 0, 0],
        [1, 1, 1, 2, -1, -1, 0, 0, 0],
        [1, 1, 1, -1, 2, -1, 0, 0, 0],
        [-1, -1, 2, 1, 1, 1, 0, 0, 0],
        [1, 1, 1, -1, -1, 2, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 3, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 3],
    ];
    let data = rows
        .iter()
        .flatten()
        .map(|&x| BigRational::new(x.into(), 3.into()))
        .collect();
    RatMatrix::from_vec(9, 9, data)
}

/// Order 10 with adjacent twins {1, 2}; SNF of W ends in 2, 304690, 0 and
/// every odd prime of b = 152345 satisfies the eigenvalue separation test.
pub fn adjacent_twins_10() -> Graph {
    from_rows(&[
        "0101000000",
        "1001000000",
        "0000101111",
        "1100110110",
        "0011000110",
        "0001001000",
        "0010010101",
        "0011101001",
        "0011100001",
        "0010001110",
    ])
}

/// Order 13 with adjacent twins {1, 2}; b = 3 * 5 * 13 * 3607 * 176153 and
/// the separation test fails only at p = 5, where the quadratic-form
/// condition rules the prime out.
pub fn refuted_prime_13() -> Graph {
    from_rows(&[
        "0100011111001",
        "1000011111001",
        "0001000010011",
        "0010001111100",
        "0000000111110",
        "1100000010011",
        "1101000100111",
        "1101101000000",
        "1111110000010",
        "1101100000110",
        "0001101001000",
        "0010111011000",
        "1110011000000",
    ])
}
