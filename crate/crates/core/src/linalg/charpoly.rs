use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, LinalgError};

/// Characteristic polynomial `det(xI - M)` as coefficients indexed by
/// power: `coeffs[k]` multiplies `x^k`, and `coeffs[n] == 1`.
///
/// Faddeev–LeVerrier recurrence: `M_k = M * M_{k-1} + c_{n-k+1} I` and
/// `c_{n-k} = -tr(M * M_k) / k`. The division is exact for integer input.
pub fn char_poly(m: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // mk <- M * mk + c_{n-k+1} I
        let mut next = m.mul(&mk)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = m.mul(&mk)?;
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        let kb = BigInt::from(k);
        debug_assert!((&trace % &kb).is_zero());
        coeffs[n - k] = -(trace / kb);
    }
    Ok(coeffs)
}

/// Evaluates a polynomial (coefficients by ascending power) at a square matrix.
pub fn eval_poly_at(coeffs: &[BigInt], m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(m).expect("square");
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}
