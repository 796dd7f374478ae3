//! Interval arithmetic over exact rationals.
//!
//! Ring operations on intervals are exact; only the transcendental
//! functions (ln, sqrt, pi, cos, sin) introduce enclosure width, and each
//! carries an explicit truncation bound so every returned interval is a
//! true enclosure. `round` caps denominator growth by outward rounding to
//! a decimal grid; it may only widen an interval.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Iv {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow10(w: u32) -> BigInt {
    BigInt::from(10u32).pow(w)
}

impl Iv {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Iv { lo, hi }
    }

    pub fn exact(v: BigRational) -> Self {
        Iv { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Self {
        Iv::exact(BigRational::from(BigInt::from(v)))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Iv::exact(BigRational::from(v.clone()))
    }

    pub fn zero() -> Self {
        Iv::from_int(0)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Iv) -> Iv {
        Iv::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Iv) -> Iv {
        Iv::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Iv {
        Iv::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Iv) -> Iv {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Iv::new(lo, hi)
    }

    pub fn scale(&self, c: &BigRational) -> Iv {
        if c.is_negative() {
            Iv::new(&self.hi * c, &self.lo * c)
        } else {
            Iv::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Integer power with correct handling of sign-crossing intervals.
    pub fn pow(&self, n: u32) -> Iv {
        if n == 0 {
            return Iv::from_int(1);
        }
        let pl = pow_rat(&self.lo, n);
        let ph = pow_rat(&self.hi, n);
        if n % 2 == 1 {
            Iv::new(pl, ph)
        } else if !self.lo.is_negative() {
            Iv::new(pl, ph)
        } else if !self.hi.is_positive() {
            Iv::new(ph, pl)
        } else {
            Iv::new(BigRational::zero(), pl.max(ph))
        }
    }

    /// Outward rounding to the grid of denominator 10^w.
    pub fn round(&self, w: u32) -> Iv {
        let s = pow10(w);
        let lo = (&self.lo * &s).floor() / BigRational::from(s.clone());
        let hi = (&self.hi * &s).ceil() / BigRational::from(s);
        Iv::new(lo, hi)
    }

    /// Enclosure of the natural log; requires a strictly positive interval.
    pub fn ln(&self, w: u32) -> Iv {
        assert!(self.is_positive(), "ln of non-positive interval");
        let (lo, _) = ln_rat(&self.lo, w);
        let (_, hi) = ln_rat(&self.hi, w);
        Iv::new(lo, hi)
    }

    /// Enclosure of the square root; requires a non-negative interval.
    pub fn sqrt(&self, w: u32) -> Iv {
        assert!(!self.lo.is_negative(), "sqrt of negative interval");
        let (lo, _) = sqrt_rat(&self.lo, w);
        let (_, hi) = sqrt_rat(&self.hi, w);
        Iv::new(lo, hi)
    }

    pub fn max_with_zero(&self) -> Iv {
        Iv::new(
            self.lo.clone().max(BigRational::zero()),
            self.hi.clone().max(BigRational::zero()),
        )
    }

    /// Decimal rendering of the midpoint-free enclosure, for reports.
    pub fn to_decimal_strings(&self, digits: u32) -> (String, String) {
        (
            rational_to_decimal(&self.lo, digits, false),
            rational_to_decimal(&self.hi, digits, true),
        )
    }
}

fn pow_rat(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Directed decimal rendering: `up = false` rounds toward -inf, else +inf.
pub fn rational_to_decimal(x: &BigRational, digits: u32, up: bool) -> String {
    let s = pow10(digits);
    let scaled = x * BigRational::from(s);
    let v = if up { scaled.ceil() } else { scaled.floor() };
    let v = v.to_integer();
    let neg = v.is_negative();
    let mut body = v.magnitude().to_string();
    let d = digits as usize;
    if body.len() <= d {
        body = format!("{}{}", "0".repeat(d + 1 - body.len()), body);
    }
    let split = body.len() - d;
    let (int_part, frac_part) = body.split_at(split);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}

/// Enclosure of ln(2) with roughly w decimal digits of accuracy.
pub fn ln2(w: u32) -> Iv {
    // ln 2 = 2 atanh(1/3)
    atanh_small(&rat(1, 3), w)
}

/// Enclosure of ln(4) = 2 ln(2).
pub fn ln4(w: u32) -> Iv {
    ln2(w).scale(&rat(2, 1))
}

/// atanh series doubled: 2 * sum z^(2k+1)/(2k+1), valid for 0 <= z <= 1/2.
/// Returns an enclosure of ln((1+z)/(1-z)).
fn atanh_small(z: &BigRational, w: u32) -> Iv {
    assert!(!z.is_negative() && *z <= rat(1, 2));
    let zz = Iv::exact(z.clone());
    let z2 = zz.mul(&zz).round(w + 6);
    let mut term = zz.clone();
    let mut sum = Iv::zero();
    let mut k = 0u32;
    let tol = BigRational::new(BigInt::one(), pow10(w + 4));
    loop {
        sum = sum.add(&term.scale(&BigRational::new(BigInt::one(), BigInt::from(2 * k + 1))));
        term = term.mul(&z2).round(w + 6);
        k += 1;
        if term.hi < tol {
            break;
        }
    }
    // Tail: sum_{j>=k} z^(2j+1)/(2j+1) <= z^(2k+1) / (1 - z^2) <= term * 4/3.
    let tail_hi = &term.hi * rat(4, 3);
    let enclo = Iv::new(sum.lo.clone(), &sum.hi + tail_hi);
    enclo.scale(&rat(2, 1)).round(w + 2)
}

/// Enclosure of ln(x) for an exact positive rational x.
fn ln_rat(x: &BigRational, w: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive());
    // Range reduction: x = m * 2^e with m in [1, 2).
    let mut e: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from(BigInt::from(2));
    let mut m = if e >= 0 {
        x / BigRational::from(BigInt::one() << e as u64)
    } else {
        x * BigRational::from(BigInt::one() << (-e) as u64)
    };
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        e -= 1;
    }
    // Cap rational size before the series.
    let m_iv = Iv::exact(m).round(w + 8);
    let z_lo = (&m_iv.lo - BigRational::one()) / (&m_iv.lo + BigRational::one());
    let z_hi = (&m_iv.hi - BigRational::one()) / (&m_iv.hi + BigRational::one());
    let ln_m_lo = atanh_small(&z_lo, w);
    let ln_m_hi = atanh_small(&z_hi, w);
    let ln_m = Iv::new(ln_m_lo.lo, ln_m_hi.hi);
    let l2 = ln2(w);
    let e_rat = BigRational::from(BigInt::from(e));
    let e_ln2 = l2.scale(&e_rat);
    let total = e_ln2.add(&ln_m).round(w);
    (total.lo, total.hi)
}

/// Enclosure of sqrt(x) for an exact non-negative rational x.
fn sqrt_rat(x: &BigRational, w: u32) -> (BigRational, BigRational) {
    assert!(!x.is_negative());
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // sqrt(n/d) = sqrt(n*d)/d; scale by 10^(2w) for w digits.
    let s = pow10(w);
    let n = x.numer() * x.denom() * &s * &s;
    let r = n.sqrt();
    let denom = BigRational::from(x.denom() * &s);
    let lo = BigRational::from(r.clone()) / denom.clone();
    let hi = BigRational::from(r + BigInt::one()) / denom;
    (lo, hi)
}

/// Enclosure of pi via Machin's formula.
pub fn pi(w: u32) -> Iv {
    let a = atan_inv(5, w);
    let b = atan_inv(239, w);
    a.scale(&rat(16, 1)).sub(&b.scale(&rat(4, 1))).round(w)
}

/// Enclosure of atan(1/k) for integer k >= 2 (alternating series).
fn atan_inv(k: i64, w: u32) -> Iv {
    let inv_k2 = rat(1, k * k);
    let mut term = rat(1, k);
    let mut sum = BigRational::zero();
    let mut j = 0u32;
    let tol = BigRational::new(BigInt::one(), pow10(w + 4));
    loop {
        let contrib = &term / BigRational::from(BigInt::from(2 * j + 1));
        if j % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term *= &inv_k2;
        j += 1;
        let next = &term / BigRational::from(BigInt::from(2 * j + 1));
        if next < tol {
            // Alternating with decreasing terms: truth within `next` of sum.
            return Iv::new(&sum - &next, &sum + &next).round(w + 2);
        }
        // Cap growth of exact rationals.
        if j % 8 == 0 {
            let r = Iv::exact(term.clone()).round(w + 8);
            term = r.hi; // safe: larger term only widens the tail bound
        }
    }
}

/// Enclosure of cos over an interval argument (|x| up to ~8 is intended).
pub fn cos(x: &Iv, w: u32) -> Iv {
    sincos(x, w, true)
}

/// Enclosure of sin over an interval argument.
pub fn sin(x: &Iv, w: u32) -> Iv {
    sincos(x, w, false)
}

fn sincos(x: &Iv, w: u32, is_cos: bool) -> Iv {
    let x2 = x.mul(x).round(w + 8);
    let mut term = if is_cos { Iv::from_int(1) } else { x.clone() };
    let mut sum = Iv::zero();
    let mut k = 0u32;
    let tol = BigRational::new(BigInt::one(), pow10(w + 4));
    loop {
        if k % 2 == 0 {
            sum = sum.add(&term);
        } else {
            sum = sum.sub(&term);
        }
        k += 1;
        let (d1, d2) = if is_cos {
            (2 * k - 1, 2 * k)
        } else {
            (2 * k, 2 * k + 1)
        };
        let denom = BigRational::from(BigInt::from(d1 as u64 * d2 as u64));
        term = term
            .mul(&x2)
            .scale(&(BigRational::one() / denom))
            .round(w + 8);
        let mag = term.lo.abs().max(term.hi.abs());
        // Remainder of the alternating tail is bounded by twice the next
        // term once the ratio x^2/((2k+1)(2k+2)) drops below 1/2.
        let ratio_ok = x2.hi < BigRational::from(BigInt::from((2 * k + 1) as u64 * (2 * k + 2) as u64)) / rat(2, 1);
        if mag < tol && ratio_ok {
            let r = &mag * rat(2, 1);
            let out = Iv::new(&sum.lo - &r, &sum.hi + &r).round(w + 2);
            // cos/sin are bounded by 1.
            return Iv::new(
                out.lo.max(rat(-1, 1)),
                out.hi.min(rat(1, 1)),
            );
        }
        if k > 200 {
            panic!("sincos series failed to converge; argument too large");
        }
    }
}
