//! Gaussian elimination over the prime field F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::factor::is_prime;
use super::{IntMatrix, LinalgError};

/// Reduces an integer into `0..p`.
pub fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below p fits in u64")
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn check_prime(p: u64) -> Result<(), LinalgError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(LinalgError::NotPrime(p))
    }
}

/// Row-major residue matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    pub data: Vec<Vec<u64>>,
}

impl ModMatrix {
    pub fn reduce(m: &IntMatrix, p: u64) -> Self {
        ModMatrix {
            rows: m.rows(),
            cols: m.cols(),
            p,
            data: (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| residue(x, p)).collect())
                .collect(),
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i][c] != 0) else {
                continue;
            };
            self.data.swap(r, pr);
            let inv = inv_mod(self.data[r][c], p);
            for x in self.data[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.data[i][c];
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let sub = mul_mod(f, self.data[r][j], p);
                    self.data[i][j] = (self.data[i][j] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Rank of `m` after reduction modulo the prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    check_prime(p)?;
    Ok(ModMatrix::reduce(m, p).rref().len())
}

/// Right kernel of `m` over F_p as a reduced-row-echelon basis: every basis
/// vector has a unit leading entry and the leading positions are cleared
/// in all other vectors.
pub fn nullspace_mod_p(m: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>, LinalgError> {
    check_prime(p)?;
    let mut a = ModMatrix::reduce(m, p);
    let pivots = a.rref();
    let cols = a.cols;
    let raw: Vec<Vec<u64>> = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a.data[row][f]) % p;
            }
            v
        })
        .collect();
    if raw.is_empty() {
        return Ok(raw);
    }
    let mut basis = ModMatrix {
        rows: raw.len(),
        cols,
        p,
        data: raw,
    };
    basis.rref();
    Ok(basis.data)
}
