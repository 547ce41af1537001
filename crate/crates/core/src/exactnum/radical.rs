//! Integer helpers for square roots and square-free parts.

use num_integer::{Integer, Roots};

use crate::error::{Error, Result};

/// Trial-division limit used when certifying square-free parts.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Splits `n` as `s² · d` with `d` square-free.
///
/// Trial division runs up to `bound`. Whatever cofactor remains has no prime
/// factor at or below `bound`; it is accepted when it is a perfect square or
/// when it is below `bound³` (then it is a prime or a product of two distinct
/// primes). Anything else could hide a large square factor and is rejected.
pub fn squarefree_decompose(n: u64, bound: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return Ok((0, 1));
    }
    let mut rest = n;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p <= bound && p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if p.saturating_mul(p) > rest {
            free *= rest;
        } else {
            let root = rest.sqrt();
            if root * root == rest {
                square *= root;
            } else if (rest as u128) < (bound as u128).pow(3) {
                free *= rest;
            } else {
                return Err(Error::SquarefreeBound {
                    value: n.to_string(),
                    bound,
                });
            }
        }
    }
    Ok((square, free))
}

/// `true` when `n ≥ 2` and no square larger than one divides it.
pub fn is_squarefree(n: u64) -> bool {
    n >= 2 && matches!(squarefree_decompose(n, DEFAULT_TRIAL_BOUND), Ok((1, _)))
}

/// Product of two square-free radicands: `√a·√b = g·√r`, returned as `(g, r)`.
pub(crate) fn mul_radicands(a: u64, b: u64) -> Result<(u64, u64)> {
    let g = a.gcd(&b);
    let r = (a / g)
        .checked_mul(b / g)
        .ok_or(Error::Overflow("radicand product"))?;
    Ok((g, r))
}

/// Exact integer square root of `n`, if `n` is a perfect square.
pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    exact_sqrt_u128(n as u128).map(|r| r as i128)
}
