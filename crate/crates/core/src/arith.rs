//! Exact integer helpers.
//!
//! Every quotient is a floor quotient and every remainder lies in `[0, m)`.
//! Ceilings are derived as `ceil(p / q) = floor((p + q - 1) / q)` for `q > 0`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision signed integer used for every scalar.
pub type Integer = BigInt;

/// Shorthand for building an [`Integer`] from a machine integer.
pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// Extended gcd: returns `(g, u, v)` with `g > 0` and `u*x + v*y = g`.
pub fn egcd(x: &Integer, y: &Integer) -> Result<(Integer, Integer, Integer)> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::Domain("egcd of (0, 0) is undefined".into()));
    }
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (Integer::one(), Integer::zero());
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Canonical residue of `x` in `[0, m)`.
pub fn mod_reduce(x: &Integer, m: &Integer) -> Result<Integer> {
    if !m.is_positive() {
        return Err(Error::Domain(format!("modulus must be positive, got {m}")));
    }
    Ok(x.mod_floor(m))
}

/// Inverse of `x` modulo `m`, in `[1, m)`.
pub fn mod_inverse(x: &Integer, m: &Integer) -> Result<Integer> {
    if *m < int(2) {
        return Err(Error::Domain(format!("modulus must be at least 2, got {m}")));
    }
    let (g, u, _) = egcd(&x.mod_floor(m), m)?;
    if !g.is_one() {
        return Err(Error::NotInvertible { x: x.to_string(), m: m.to_string() });
    }
    Ok(u.mod_floor(m))
}

/// `floor(p / q)` for `q > 0`.
pub fn floor_div(p: &Integer, q: &Integer) -> Integer {
    p.div_floor(q)
}

/// `ceil(p / q)` for `q > 0`.
pub fn ceil_div(p: &Integer, q: &Integer) -> Integer {
    (p + q - 1u32).div_floor(q)
}

/// Floor quotient and remainder `(p div q, p mod q)` for `q > 0`.
pub fn split(p: &Integer, q: &Integer) -> (Integer, Integer) {
    p.div_mod_floor(q)
}

/// `gcd(x, y)`, nonnegative.
pub fn gcd(x: &Integer, y: &Integer) -> Integer {
    x.gcd(y)
}

/// `n (n + 1) / 2`.
pub fn triangular(n: &Integer) -> Integer {
    (n * (n + 1u32)) >> 1usize
}

/// Parse a decimal integer with an optional leading minus sign (ASCII `-` or U+2212).
pub fn parse_decimal(text: &str) -> Result<Integer> {
    let t = text.trim();
    let (neg, digits) = if let Some(rest) = t.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, t)
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Domain(format!("not a decimal integer: {text:?}")));
    }
    let v: Integer = digits
        .parse()
        .map_err(|_| Error::Domain(format!("not a decimal integer: {text:?}")))?;
    Ok(if neg { -v } else { v })
}
