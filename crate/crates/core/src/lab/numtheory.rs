//! Small elementary number theory helpers used to build congruence families.

use crate::error::{Error, Result};

/// Deterministic trial division; fine for the prime sizes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Inverse of `a` modulo `m` in `[0, m)` by the extended Euclidean algorithm.
pub fn mod_inverse(a: i128, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::NotInvertible { a, modulus: m });
    }
    if m == 1 {
        return Ok(0);
    }
    let m_i = m as i128;
    let (mut old_r, mut r) = (a.rem_euclid(m_i), m_i);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { a, modulus: m });
    }
    Ok(old_s.rem_euclid(m_i) as u64)
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut result = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre_symbol(a: i128, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let r = a.rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}
