//! Shared plumbing: primality, perfect powers, integer polynomials, and
//! serde helpers for big integers.

pub mod intpoly;
pub mod primes;
pub mod serde_bigint;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Exact test whether `v` is a perfect `n`-th power (n >= 1).
///
/// For odd `n` negative inputs are allowed (root carries the sign); for even
/// `n` a negative input is never a power.
pub fn is_perfect_nth_power(v: &BigInt, n: u32) -> bool {
    assert!(n >= 1);
    if v.is_zero() {
        return true;
    }
    if v.is_negative() && n % 2 == 0 {
        return false;
    }
    let a = v.abs();
    let r = a.nth_root(n);
    let ok = r.pow(n) == a;
    ok
}

/// Smallest integer `k` with `k^2 >= v` (v >= 0), i.e. the ceiling of sqrt(v).
pub fn ceil_sqrt(v: &BigInt) -> BigInt {
    assert!(!v.is_negative());
    let r = v.sqrt();
    if &r * &r == *v {
        r
    } else {
        r + 1
    }
}

/// v_p(n) for nonzero n: the exponent of the prime `p` in `n`.
pub fn int_valuation(n: &BigInt, p: u32) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0u64;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}
