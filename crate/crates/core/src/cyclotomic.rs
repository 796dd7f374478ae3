//! Exact arithmetic in Z[zeta_p] for odd primes p.
//!
//! Elements are integer coefficient vectors in the power basis
//! 1, zeta, ..., zeta^(p-2); every operation reduces back to this canonical
//! form via zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)), so equality is
//! coefficientwise. Norms are exact (product of Galois conjugates, which is
//! the resultant of the representing polynomial with the cyclotomic
//! polynomial), and the ramified valuation at (1 - zeta_p) is read off the
//! norm.

use crate::error::{Error, Result};
use crate::util::primes::{is_prime_u64, pow_mod};
use crate::util::{int_valuation, intpoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The field Q(zeta_p): everything an element needs to know about p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclotomicContext {
    p: u32,
}

impl CyclotomicContext {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || !is_prime_u64(p as u64) {
            return Err(Error::Invalid(format!("p = {p} is not an odd prime")));
        }
        Ok(CyclotomicContext { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree of Q(zeta_p) over Q.
    pub fn degree(&self) -> usize {
        (self.p - 1) as usize
    }

    /// Coefficients of Phi_p = 1 + x + ... + x^(p-1), low degree first.
    pub fn phi_coeffs(&self) -> Vec<BigInt> {
        vec![BigInt::one(); self.p as usize]
    }

    /// D_p = (-1)^((p-1)/2) * p^(p-2).
    pub fn discriminant(&self) -> BigInt {
        let mag = BigInt::from(self.p).pow(self.p - 2);
        if (self.p - 1) / 2 % 2 == 1 {
            -mag
        } else {
            mag
        }
    }

    pub fn zero(&self) -> CycInt {
        CycInt {
            ctx: *self,
            coeffs: vec![BigInt::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CycInt {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> CycInt {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[0] = BigInt::from(v);
        CycInt { ctx: *self, coeffs: c }
    }

    pub fn zeta(&self) -> CycInt {
        self.zeta_pow(1)
    }

    /// zeta^k for any integer k (reduced mod p, with the zeta^(p-1) fold).
    pub fn zeta_pow(&self, k: i64) -> CycInt {
        let e = k.rem_euclid(self.p as i64) as usize;
        let mut raw = vec![BigInt::zero(); self.p as usize];
        raw[e] = BigInt::one();
        CycInt::from_raw(*self, raw)
    }

    /// Element from power-basis coefficients of any length; exponents are
    /// folded via zeta^p = 1 and the canonical relation.
    pub fn element(&self, coeffs: Vec<BigInt>) -> CycInt {
        CycInt::from_raw(*self, coeffs)
    }

    pub fn element_i64(&self, coeffs: &[i64]) -> CycInt {
        self.element(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Convenience for the generators a + b*zeta used throughout.
    pub fn linear(&self, a: i64, b: i64) -> CycInt {
        self.element_i64(&[a, b])
    }
}

/// An element of Z[zeta_p] in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct CycInt {
    ctx: CyclotomicContext,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    fn from_raw(ctx: CyclotomicContext, raw: Vec<BigInt>) -> Self {
        let p = ctx.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, c) in raw.into_iter().enumerate() {
            acc[i % p] += c;
        }
        let fold = acc.pop().unwrap();
        for a in acc.iter_mut() {
            *a -= &fold;
        }
        CycInt { ctx, coeffs: acc }
    }

    pub fn ctx(&self) -> CyclotomicContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rational-integer part, if the element lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_ctx(&self, other: &CycInt) -> Result<()> {
        if self.ctx != other.ctx {
            Err(Error::MixedContexts)
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check_ctx(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { ctx: self.ctx, coeffs })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check_ctx(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt { ctx: self.ctx, coeffs })
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check_ctx(other)?;
        let n = self.coeffs.len();
        let mut raw = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(CycInt::from_raw(self.ctx, raw))
    }

    pub fn pow(&self, mut e: u64) -> CycInt {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            base = base.checked_mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Galois conjugate zeta |-> zeta^k, for k not divisible by p.
    pub fn conjugate(&self, k: u32) -> CycInt {
        assert!(k % self.ctx.p != 0, "conjugate index divisible by p");
        let p = self.ctx.p as usize;
        let mut raw = vec![BigInt::zero(); p];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(j * k as usize) % p] += c;
        }
        CycInt::from_raw(self.ctx, raw)
    }

    /// Absolute norm N_{Q(zeta_p)/Q}: the product of all Galois conjugates,
    /// equivalently Res(Phi_p, representing polynomial). Exact.
    pub fn norm(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let mut prod = self.clone();
        for k in 2..self.ctx.p {
            prod = prod.checked_mul(&self.conjugate(k)).unwrap();
        }
        prod.as_integer()
            .expect("product of all conjugates must be rational")
    }

    /// Valuation at the ramified prime (1 - zeta_p), computed as
    /// v_p(norm): valid since (1 - zeta_p) is the unique prime above p
    /// and has residue degree one.
    pub fn ramified_valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinity;
        }
        Valuation::Finite(int_valuation(&self.norm(), self.ctx.p))
    }

    /// Coefficients as decimal strings, low degree first (the certificate
    /// wire format).
    pub fn coeffs_decimal(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(p={}; {:?})", self.ctx.p, self.coeffs_decimal())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! ref_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("mixed cyclotomic contexts")
            }
        }
    };
}
ref_op!(Add, add, checked_add);
ref_op!(Sub, sub, checked_sub);
ref_op!(Mul, mul, checked_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Valuation value: finite exponent or infinity (for zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Valuation {
    Finite(u64),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinity => None,
        }
    }
}

/// A degree-one prime of Z[zeta_p] (or the ramified prime above p), with
/// its reduction map zeta |-> root into F_N.
#[derive(Clone, Debug)]
pub struct ResiduePrime {
    ctx: CyclotomicContext,
    ell: u64,
    root: u64,
    n: u64,
    generator: Option<CycInt>,
}

impl ResiduePrime {
    pub fn ctx(&self) -> CyclotomicContext {
        self.ctx
    }

    /// Rational prime below the prime ideal.
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// The image of zeta in F_N.
    pub fn root(&self) -> u64 {
        self.root
    }

    /// Residue field size.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn generator(&self) -> Option<&CycInt> {
        self.generator.as_ref()
    }

    pub fn is_ramified(&self) -> bool {
        self.ell == self.ctx.p as u64
    }
}

/// Construct the residue prime generated by `generator`.
///
/// Accepts only generators whose norm is (up to sign) a rational prime;
/// this covers the degree-one primes and the ramified prime (norm p).
/// The root t is the smallest non-negative residue with Phi_p(t) = 0 and
/// generator(t) = 0 in F_ell.
pub fn residue_prime(generator: &CycInt) -> Result<ResiduePrime> {
    let ctx = generator.ctx();
    let p = ctx.p() as u64;
    let nrm = generator.norm().abs();
    if nrm.is_zero() {
        return Err(Error::Invalid("zero element generates no prime".into()));
    }
    if nrm.is_one() {
        return Err(Error::UnitGeneratesNoPrime);
    }
    let ell = nrm
        .to_u64()
        .ok_or_else(|| Error::Invalid(format!("|norm| = {nrm} too large for residue arithmetic")))?;
    if !is_prime_u64(ell) {
        return Err(Error::NotDegreeOnePrime(nrm.to_string()));
    }
    // Scan F_ell for the root annihilating both Phi_p and the generator.
    let mut root = None;
    for t in 0..ell {
        if phi_at_mod(p, t, ell) != 0 {
            continue;
        }
        if eval_mod(generator.coeffs(), t, ell) == 0 {
            root = Some(t);
            break;
        }
    }
    let root = root.ok_or_else(|| {
        Error::Invalid(format!(
            "internal: no root of Phi_{p} annihilates the generator mod {ell}"
        ))
    })?;
    Ok(ResiduePrime {
        ctx,
        ell,
        root,
        n: ell,
        generator: Some(generator.clone()),
    })
}

/// The ramified prime (1 - zeta_p), with residue field F_p and zeta |-> 1.
pub fn ramified_prime(ctx: CyclotomicContext) -> ResiduePrime {
    let one_minus_zeta = &ctx.one() - &ctx.zeta();
    ResiduePrime {
        ctx,
        ell: ctx.p() as u64,
        root: 1,
        n: ctx.p() as u64,
        generator: Some(one_minus_zeta),
    }
}

/// Phi_p(t) mod ell = 1 + t + ... + t^(p-1) mod ell.
fn phi_at_mod(p: u64, t: u64, ell: u64) -> u64 {
    let mut acc = 0u64;
    let mut pw = 1u64;
    for _ in 0..p {
        acc = (acc + pw) % ell;
        pw = pw * t % ell;
    }
    acc
}

fn eval_mod(coeffs: &[BigInt], t: u64, ell: u64) -> u64 {
    let mut acc = 0u64;
    for c in coeffs.iter().rev() {
        let cm = c.mod_floor(&BigInt::from(ell)).to_u64().unwrap();
        acc = (acc * t + cm) % ell;
    }
    acc
}

/// Reduction of `a` modulo the prime `q`: evaluate the representing
/// polynomial at the root in F_N. A ring homomorphism.
pub fn reduce(a: &CycInt, q: &ResiduePrime) -> Result<u64> {
    if a.ctx() != q.ctx {
        return Err(Error::MixedContexts);
    }
    Ok(eval_mod(a.coeffs(), q.root, q.ell))
}

/// Norm through the resultant route, used as an independent oracle for the
/// conjugate-product norm in tests.
pub fn norm_via_resultant(a: &CycInt) -> BigInt {
    let phi = a.ctx().phi_coeffs();
    let rep = intpoly::strip(a.coeffs().to_vec());
    intpoly::resultant(&phi, &rep)
}

#[allow(unused)]
fn pow_check(base: u64, e: u64, m: u64) -> u64 {
    pow_mod(base, e, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32) -> CyclotomicContext {
        CyclotomicContext::new(p).unwrap()
    }

    #[test]
    fn context_validation() {
        assert!(CyclotomicContext::new(2).is_err());
        assert!(CyclotomicContext::new(9).is_err());
        assert!(CyclotomicContext::new(1).is_err());
        assert!(CyclotomicContext::new(3).is_ok());
        assert!(CyclotomicContext::new(7919).is_ok());
    }

    #[test]
    fn discriminants() {
        assert_eq!(ctx(3).discriminant(), BigInt::from(-3));
        assert_eq!(ctx(5).discriminant(), BigInt::from(125));
        assert_eq!(ctx(7).discriminant(), BigInt::from(-16807));
    }

    #[test]
    fn cube_of_one_minus_zeta() {
        // p=3: (1-z)^3 = -3 - 6z, expanded by hand with z^2 = -1 - z.
        let c = ctx(3);
        let x = &c.one() - &c.zeta();
        let cube = x.pow(3);
        assert_eq!(cube, c.element_i64(&[-3, -6]));
    }

    #[test]
    fn additive_identity_and_zeta_order() {
        let c = ctx(5);
        let a = c.element_i64(&[3, -1, 4, 1]);
        assert_eq!(a.checked_add(&c.zero()).unwrap(), a);
        let c3 = ctx(3);
        assert_eq!(c3.zeta().pow(3), c3.one());
        assert_eq!(c3.zeta_pow(2), c3.element_i64(&[-1, -1]));
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = ctx(3).one();
        let b = ctx(5).one();
        assert!(matches!(a.checked_add(&b), Err(Error::MixedContexts)));
        assert!(matches!(a.checked_mul(&b), Err(Error::MixedContexts)));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(ctx(3).linear(2, -1).norm(), BigInt::from(7));
        assert_eq!(ctx(7).linear(2, 3).norm(), BigInt::from(463));
        assert_eq!(ctx(5).linear(1, -1).norm(), BigInt::from(5));
        // Norm of a rational integer m is m^(p-1).
        assert_eq!(ctx(5).from_i64(3).norm(), BigInt::from(81));
        assert_eq!(ctx(3).from_i64(-2).norm(), BigInt::from(4));
    }

    #[test]
    fn builtin_generator_norms_match_residue_sizes() {
        // The residue field sizes named in the sieve cases.
        assert_eq!(ctx(3).linear(2, -1).norm(), BigInt::from(7));
        assert_eq!(ctx(3).linear(3, 1).norm(), BigInt::from(7));
        assert_eq!(ctx(5).linear(2, -1).norm(), BigInt::from(31));
        assert_eq!(ctx(5).linear(2, 1).norm(), BigInt::from(11));
        assert_eq!(ctx(5).linear(3, 1).norm(), BigInt::from(61));
        assert_eq!(ctx(7).linear(2, -1).norm(), BigInt::from(127));
        assert_eq!(ctx(7).linear(2, 1).norm(), BigInt::from(43));
        assert_eq!(ctx(7).linear(3, 1).norm(), BigInt::from(547));
        assert_eq!(ctx(7).linear(2, 3).norm(), BigInt::from(463));
    }

    #[test]
    fn residue_prime_construction() {
        let q = residue_prime(&ctx(3).linear(2, -1)).unwrap();
        assert_eq!((q.ell(), q.root(), q.n()), (7, 2, 7));
        let q = residue_prime(&ctx(5).linear(2, 1)).unwrap();
        assert_eq!((q.ell(), q.root(), q.n()), (11, 9, 11));
        // A unit generates no prime.
        assert!(matches!(
            residue_prime(&ctx(5).zeta()),
            Err(Error::UnitGeneratesNoPrime)
        ));
        // Composite norm is rejected.
        let sq = ctx(5).linear(1, -1).pow(2);
        assert!(matches!(
            residue_prime(&sq),
            Err(Error::NotDegreeOnePrime(_))
        ));
        // The ramified generator routes through the same path with N = p.
        let q = residue_prime(&ctx(5).linear(1, -1)).unwrap();
        assert_eq!((q.ell(), q.root(), q.n()), (5, 1, 5));
        assert!(q.is_ramified());
    }

    #[test]
    fn reduction_examples() {
        let c = ctx(3);
        let gen = c.linear(2, -1);
        let q = residue_prime(&gen).unwrap();
        assert_eq!(reduce(&gen, &q).unwrap(), 0);
        // Reduction respects context.
        let other = ctx(5).one();
        assert!(matches!(reduce(&other, &q), Err(Error::MixedContexts)));
    }

    #[test]
    fn ramified_valuations() {
        for p in [3u32, 5, 7] {
            let c = ctx(p);
            let omz = &c.one() - &c.zeta();
            assert_eq!(omz.ramified_valuation(), Valuation::Finite(1));
            assert_eq!(
                c.from_i64(p as i64).ramified_valuation(),
                Valuation::Finite((p - 1) as u64)
            );
            assert_eq!(c.zero().ramified_valuation(), Valuation::Infinity);
            assert_eq!(c.one().ramified_valuation(), Valuation::Finite(0));
        }
    }

    #[test]
    fn norm_matches_resultant_oracle() {
        let c = ctx(7);
        let a = c.element_i64(&[3, -2, 0, 5, 1, -4]);
        assert_eq!(a.norm(), norm_via_resultant(&a));
        let b = c.linear(2, 3);
        assert_eq!(b.norm(), norm_via_resultant(&b));
        let prod = a.checked_mul(&b).unwrap();
        assert_eq!(prod.norm(), norm_via_resultant(&prod));
    }

    #[test]
    fn serialization_is_decimal_strings() {
        let a = ctx(3).element_i64(&[-3, -6]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"["-3","-6"]"#);
    }
}
