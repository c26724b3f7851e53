use super::modp::{mul_mod, pow_mod};

/// Square roots of `a` modulo an odd prime `p` by Tonelli–Shanks.
///
/// Returns `(c, p - c)` with `c <= p - c`, `(0, 0)` for `a = 0`, and `None`
/// when `a` is a non-residue.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<(u64, u64)> {
    debug_assert!(p > 2 && p % 2 == 1);
    let a = a % p;
    if a == 0 {
        return Some((0, 0));
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("an odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    let other = p - r;
    Some((r.min(other), r.max(other)))
}

/// Legendre-symbol test for quadratic residuosity (zero counts as a residue).
pub fn is_quadratic_residue(a: u64, p: u64) -> bool {
    a.is_multiple_of(p) || pow_mod(a, (p - 1) / 2, p) == 1
}
