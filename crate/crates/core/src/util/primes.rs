//! Primality for machine-sized integers and small factorization helpers.

/// Deterministic Miller–Rabin for u64 (the base set is exact below 3.3e24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// All primes below `n`, ascending.
pub fn primes_below(n: u64) -> Vec<u64> {
    if n <= 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| if p { Some(k as u64) } else { None })
        .collect()
}

/// If `m` is a prime power r^j (j >= 1), returns (r, j).
pub fn prime_power_decompose(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut r = m;
    // The prime base divides m, so it is found by trial division up to m^(1/2)
    // unless m itself is prime.
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            r = d;
            break;
        }
        d += 1;
    }
    if !is_prime_u64(r) {
        return None;
    }
    let mut rest = m;
    let mut j = 0u32;
    while rest % r == 0 {
        rest /= r;
        j += 1;
    }
    if rest == 1 {
        Some((r, j))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_below(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_below(5000).len(), 669);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let ps = primes_below(2000);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), ps.binary_search(&n).is_ok(), "n={n}");
        }
        assert!(is_prime_u64(4294967311)); // first prime above 2^32
        assert!(!is_prime_u64(4294967297)); // 641 * 6700417
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_decompose(16), Some((2, 4)));
        assert_eq!(prime_power_decompose(27), Some((3, 3)));
        assert_eq!(prime_power_decompose(13), Some((13, 1)));
        assert_eq!(prime_power_decompose(12), None);
        assert_eq!(prime_power_decompose(1), None);
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(6, 9), None);
        assert_eq!(inv_mod(1, 2), Some(1));
    }
}
