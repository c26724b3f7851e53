//! Exact dense linear algebra over Z, Q and F_p, plus the number-theoretic
//! helpers the spectral criteria need.

mod bareiss;
mod charpoly;
mod factor;
mod matrix;
pub mod modp;
mod rational;
mod snf;
mod sqrt_mod;

use num_bigint::BigInt;
use thiserror::Error;

pub use bareiss::{bareiss_det, nullspace_integer, rank_rational};
pub use charpoly::{char_poly, eval_poly_at};
pub use factor::{factorize, is_prime, is_prime_u128, PrimeFactorization, FACTOR_LIMIT};
pub use matrix::{dot, IntMatrix};
pub use modp::{nullspace_mod_p, rank_mod_p, residue};
pub use rational::RatMatrix;
pub use snf::{smith_normal_form, SnfQueries, SnfResult};
pub use sqrt_mod::{is_quadratic_residue, sqrt_mod_p};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    Dimension {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected a positive integer, got {0}")]
    NotPositive(BigInt),
    #[error("{0} exceeds the supported factorization range")]
    FactorLimit(BigInt),
}
