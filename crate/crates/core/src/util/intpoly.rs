//! Dense univariate polynomials over Z: evaluation, derivative, resultant
//! (subresultant PRS) and discriminant. Coefficients are stored low degree
//! first; the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn strip(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
    c
}

pub fn degree(c: &[BigInt]) -> Option<usize> {
    if c.is_empty() {
        None
    } else {
        Some(c.len() - 1)
    }
}

pub fn eval(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for coeff in c.iter().rev() {
        acc = acc * x + coeff;
    }
    acc
}

pub fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    if c.len() <= 1 {
        return vec![];
    }
    strip(
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * BigInt::from(i))
            .collect(),
    )
}

fn content(c: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for a in c {
        g = g.gcd(a);
    }
    g
}

fn scale_div(c: &[BigInt], d: &BigInt) -> Vec<BigInt> {
    c.iter()
        .map(|a| {
            let (q, r) = a.div_rem(d);
            debug_assert!(r.is_zero(), "inexact division in subresultant PRS");
            q
        })
        .collect()
}

/// Pseudo-remainder: returns lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("pseudo_rem by zero");
    let lc_b = b[db].clone();
    let mut r = a.to_vec();
    let mut e = (degree(a).unwrap_or(0) + 1).saturating_sub(db);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lead = r[dr].clone();
        let shift = dr - db;
        let mut next = vec![BigInt::zero(); dr.max(db + shift) + 1];
        for (i, coeff) in r.iter().enumerate() {
            next[i] = coeff * &lc_b;
        }
        for (i, coeff) in b.iter().enumerate() {
            next[i + shift] -= coeff * &lead;
        }
        r = strip(next);
        e -= 1;
    }
    let factor = lc_b.pow(e as u32);
    strip(r.iter().map(|x| x * &factor).collect())
}

/// Resultant of two integer polynomials by the subresultant PRS.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let a = strip(a.to_vec());
    let b = strip(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if da == 0 && db == 0 {
        return BigInt::one();
    }
    if da < db {
        let sign = if (da * db) % 2 == 1 { -1 } else { 1 };
        return sign * resultant(&b, &a);
    }
    if db == 0 {
        return b[0].pow(da as u32);
    }

    // Cohen, Algorithm 3.3.7.
    let ca = content(&a);
    let cb = content(&b);
    let mut big_a = scale_div(&a, &ca);
    let mut big_b = scale_div(&b, &cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    let mut s = BigInt::one();
    let t = ca.pow(db as u32) * cb.pow(da as u32);
    loop {
        let da = degree(&big_a).unwrap();
        let db = degree(&big_b).unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&big_a, &big_b);
        big_a = big_b;
        let denom = &g * h.pow(delta as u32);
        big_b = strip(scale_div(&r, &denom));
        if big_b.is_empty() {
            return BigInt::zero();
        }
        g = big_a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        };
        if degree(&big_b) == Some(0) {
            let da = degree(&big_a).unwrap();
            let num = big_b[0].pow(da as u32);
            let den = h.pow(da as u32 - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            return s * t * q;
        }
    }
}

/// Discriminant of f: (-1)^(n(n-1)/2) * Res(f, f') / lc(f).
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let f = strip(f.to_vec());
    let n = degree(&f).expect("discriminant of zero polynomial");
    assert!(n >= 1);
    let res = resultant(&f, &derivative(&f));
    let lc = f[n].clone();
    let (q, r) = res.div_rem(&lc);
    debug_assert!(r.is_zero());
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
    sign * q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        strip(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn eval_and_derivative() {
        let f = p(&[2, 0, -2, 1]); // x^3 - 2x^2 + 2
        assert_eq!(eval(&f, &BigInt::from(3)), BigInt::from(11));
        assert_eq!(derivative(&f), p(&[0, -4, 3]));
    }

    #[test]
    fn resultant_known_values() {
        // Res(x^2 - 1, x - 2) = 3 (evaluate at the root of the linear factor).
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])), BigInt::from(3));
        // Res(x^2+x+1, x-2) = 7 = Phi_3(2).
        assert_eq!(resultant(&p(&[1, 1, 1]), &p(&[-2, 1])), BigInt::from(7));
        // Common root => 0.
        assert_eq!(
            resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])),
            BigInt::from(0)
        );
        // Swap changes by (-1)^(deg f * deg g).
        let f = p(&[1, 3, 0, 1]);
        let g = p(&[5, 0, 1]);
        let r1 = resultant(&f, &g);
        let r2 = resultant(&g, &f);
        assert_eq!(r1, r2); // 3 * 2 even
    }

    #[test]
    fn resultant_matches_root_product() {
        // f = (x-1)(x-2)(x-3), g arbitrary: Res(f,g) = prod g(root).
        let f = p(&[-6, 11, -6, 1]);
        let g = p(&[1, 1, 1]); // x^2+x+1
        let expect = eval(&g, &BigInt::from(1)) * eval(&g, &BigInt::from(2)) * eval(&g, &BigInt::from(3));
        assert_eq!(resultant(&f, &g), expect);
    }

    #[test]
    fn discriminants() {
        // disc(x^2 + bx + c) = b^2 - 4c
        assert_eq!(discriminant(&p(&[3, 1, 1])), BigInt::from(1 - 12));
        // disc(x^3 + px + q) = -4p^3 - 27q^2
        assert_eq!(discriminant(&p(&[2, -1, 0, 1])), BigInt::from(4 - 108));
        // disc(x^2 + x + 1) = -3
        assert_eq!(discriminant(&p(&[1, 1, 1])), BigInt::from(-3));
    }
}
