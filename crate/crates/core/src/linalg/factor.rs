//! Integer factorization for the sizes that show up as odd parts of
//! walk-matrix invariant factors.
//!
//! Trial division removes every prime below 10^6; any cofactor left is
//! split with Brent's variant of Pollard's rho and certified with
//! Miller–Rabin using the first thirteen primes as witnesses, which is
//! deterministic for every input below 3.317 * 10^24.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::LinalgError;

/// Inputs must stay below this bound for the primality certificate to hold.
pub const FACTOR_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const TRIAL_LIMIT: u64 = 1_000_000;
const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub value: BigInt,
    /// `(prime, exponent)` with primes strictly increasing
    pub factors: Vec<(BigInt, u32)>,
}

impl PrimeFactorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// The odd primes as machine words, or `None` if one exceeds `u64`.
    pub fn odd_primes(&self) -> Option<Vec<u64>> {
        self.primes()
            .filter(|p| p.is_odd())
            .map(|p| p.to_u64())
            .collect()
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn factorize(v: &BigInt) -> Result<PrimeFactorization, LinalgError> {
    if !v.is_positive() {
        return Err(LinalgError::NotPositive(v.clone()));
    }
    let n = v
        .to_u128()
        .filter(|&n| n < FACTOR_LIMIT)
        .ok_or_else(|| LinalgError::FactorLimit(v.clone()))?;

    let mut primes: Vec<u128> = Vec::new();
    let mut rest = n;
    while rest % 2 == 0 {
        primes.push(2);
        rest /= 2;
    }
    let mut d: u128 = 3;
    while d < TRIAL_LIMIT as u128 && d * d <= rest {
        while rest % d == 0 {
            primes.push(d);
            rest /= d;
        }
        d += 2;
    }
    if rest > 1 {
        split_into(rest, &mut primes);
    }
    primes.sort_unstable();

    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(PrimeFactorization {
        value: v.clone(),
        factors,
    })
}

fn split_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if n < (TRIAL_LIMIT as u128) * (TRIAL_LIMIT as u128) || is_prime_u128(n) {
        // no factor below 10^6 survives trial division, so such n is prime
        out.push(n);
        return;
    }
    let d = rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if a < 1 << 64 && b < 1 << 64 {
        return a * b % m;
    }
    // m < 2^82, so 2a never overflows
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, valid for `n < FACTOR_LIMIT`.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        let w = w as u128;
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod_u128(w as u128, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: u64) -> bool {
    is_prime_u128(n as u128)
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    a.gcd(&b)
}

/// A nontrivial divisor of the odd composite `n` (Brent's cycle finding).
fn rho(n: u128) -> u128 {
    for c in 1u128.. {
        let f = |x: u128| (mul_mod_u128(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let (mut x, mut g, mut ys) = (0u128, 1u128, 0u128);
        const BLOCK: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = mul_mod_u128(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausts constants only for prime n")
}

impl PrimeFactorization {
    /// Recomputes the product of all prime powers.
    pub fn product(&self) -> BigInt {
        self.factors.iter().fold(BigInt::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        })
    }
}
