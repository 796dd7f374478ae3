//! Eisenstein checks relative to the valuation at (1 - zeta_p), the
//! translation argument, and the conjugated family
//! phi_{(p,i)}(x) = (x - zeta_p^i)^p + (1 + zeta_p^i - zeta_p).

use crate::cyclotomic::{CycInt, CyclotomicContext, Valuation};
use crate::dynamics::{RingOps, UnicriticalMap};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::Serialize;

/// Polynomial with Z[zeta_p] coefficients, low degree first, nonzero lead.
#[derive(Clone, Debug, PartialEq)]
pub struct CycPolynomial {
    ctx: CyclotomicContext,
    coeffs: Vec<CycInt>,
}

/// Hard cap on expanded-iterate degree; coefficient counts grow as p^n.
pub const DEGREE_CAP: usize = 200;

impl CycPolynomial {
    pub fn new(ctx: CyclotomicContext, mut coeffs: Vec<CycInt>) -> Result<Self> {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Invalid("zero polynomial".into()));
        }
        Ok(CycPolynomial { ctx, coeffs })
    }

    pub fn ctx(&self) -> CyclotomicContext {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &CycInt {
        &self.coeffs[0]
    }

    pub fn leading(&self) -> &CycInt {
        self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: &CycInt) -> CycInt {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    fn mul(&self, o: &CycPolynomial) -> CycPolynomial {
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut raw = vec![self.ctx.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                raw[i + j] = raw[i + j].add(&a.mul(b));
            }
        }
        CycPolynomial { ctx: self.ctx, coeffs: raw }
    }

    fn add_poly(&self, o: &CycPolynomial) -> CycPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = self.ctx.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = o.coeffs.get(i).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        CycPolynomial { ctx: self.ctx, coeffs }
    }

    fn constant(ctx: CyclotomicContext, c: CycInt) -> CycPolynomial {
        CycPolynomial { ctx, coeffs: vec![c] }
    }

    /// Composition self(g(x)); caller bounds the degree.
    pub fn compose(&self, g: &CycPolynomial) -> CycPolynomial {
        let mut acc = CycPolynomial::constant(self.ctx, self.coeffs.last().unwrap().clone());
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(g);
            acc = acc.add_poly(&CycPolynomial::constant(self.ctx, c.clone()));
        }
        acc
    }

    /// Coefficient form of a unicritical map (x - gamma)^d + c.
    pub fn from_map(map: &UnicriticalMap<CycInt>) -> CycPolynomial {
        let ctx = map.gamma().ctx();
        let lin = CycPolynomial {
            ctx,
            coeffs: vec![-map.gamma(), ctx.one()],
        };
        let mut acc = lin.clone();
        for _ in 1..map.degree() {
            acc = acc.mul(&lin);
        }
        acc.add_poly(&CycPolynomial::constant(ctx, map.c().clone()))
    }
}

/// Which flavour of Eisenstein condition to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EisensteinMode {
    /// nu(lead) = 0, nu(middle) >= 1, nu(constant) = 1.
    Standard,
    /// nu(lead) = 0, nu(middle) > 1, nu(constant) = 1.
    Strong,
}

fn nu(c: &CycInt) -> Valuation {
    c.ramified_valuation()
}

/// Eisenstein test at the ramified valuation above p.
pub fn eisenstein_check(f: &CycPolynomial, mode: EisensteinMode) -> bool {
    let deg = f.degree();
    if deg == 0 {
        return false;
    }
    if nu(f.leading()) != Valuation::Finite(0) {
        return false;
    }
    if nu(f.constant_term()) != Valuation::Finite(1) {
        return false;
    }
    for c in &f.coeffs()[1..deg] {
        match (nu(c), mode) {
            (Valuation::Infinity, _) => {}
            (Valuation::Finite(v), EisensteinMode::Standard) if v >= 1 => {}
            (Valuation::Finite(v), EisensteinMode::Strong) if v > 1 => {}
            _ => return false,
        }
    }
    true
}

/// The translation argument: for f of degree p satisfying the strong
/// conditions and any integral alpha, g(x) = f(x + alpha) - lead * alpha^p
/// is Eisenstein. Returns g after checking the conclusion.
pub fn translate_check(f: &CycPolynomial, alpha: &CycInt) -> Result<(bool, CycPolynomial)> {
    if !eisenstein_check(f, EisensteinMode::Strong) {
        return Err(Error::LemmaHypotheses);
    }
    let ctx = f.ctx();
    let p = f.degree();
    // Binomial expansion: b_j = sum_{i >= j} c_i * C(i, j) * alpha^(i-j).
    let mut alpha_pows = vec![ctx.one()];
    for _ in 0..p {
        alpha_pows.push(alpha_pows.last().unwrap().mul(alpha));
    }
    let mut b = Vec::with_capacity(p + 1);
    for j in 0..=p {
        let mut acc = ctx.zero();
        for i in j..=p {
            let bin = ctx.element(vec![binomial(i, j)]);
            let term = f.coeffs()[i].mul(&alpha_pows[i - j]).mul(&bin);
            acc = acc.add(&term);
        }
        b.push(acc);
    }
    // Subtract lead * alpha^p from the constant term.
    b[0] = b[0].sub(&f.leading().mul(&alpha_pows[p]));
    let g = CycPolynomial::new(ctx, b)?;
    let ok = eisenstein_check(&g, EisensteinMode::Standard);
    Ok((ok, g))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from((n - i) as u64) / BigInt::from((i + 1) as u64);
    }
    acc
}

/// phi_{(p,i)}(x) = (x - zeta^i)^p + (1 + zeta^i - zeta).
pub fn conjugated_map(ctx: CyclotomicContext, i: u32) -> UnicriticalMap<CycInt> {
    let gamma = ctx.zeta_pow(i as i64);
    let c = ctx.one().add(&ctx.zeta_pow(i as i64)).sub(&ctx.zeta());
    UnicriticalMap::new(ctx.p(), gamma, c).unwrap()
}

/// Certificate for the conjugated-family checks at one (p, i).
#[derive(Clone, Debug, Serialize)]
pub struct CorollaryCertificate {
    pub p: u32,
    pub i: u32,
    /// phi(0) = phi^2(0) = zeta^i - zeta holds exactly.
    pub orbit_identity: bool,
    /// zeta^(p-i) * phi(0) = 1 - zeta^(p-i+1) holds exactly.
    pub unit_rotation: bool,
    /// (n, nu(phi^n(0))) for 1 <= n <= n_max.
    pub valuations: Vec<(u64, u64)>,
    /// Iterates whose expanded coefficient form was verified Eisenstein.
    pub expanded_eisenstein: Vec<u64>,
    /// Largest n with the expansion inside the degree cap; larger n are
    /// certified only through the constant-term valuation ("indirect").
    pub expanded_up_to: u64,
    pub valuation_up_to: u64,
    pub complete: bool,
    pub verdict: bool,
}

/// Verify the conjugated-family facts for 2 <= i <= p up to n_max iterates.
pub fn corollary_family_check(p: u32, i: u32, n_max: u64) -> Result<CorollaryCertificate> {
    let ctx = CyclotomicContext::new(p)?;
    if !(2..=p).contains(&i) {
        return Err(Error::Invalid(format!("i = {i} out of range 2..=p")));
    }
    let phi = conjugated_map(ctx, i);
    let zero = ctx.zero();
    let expected = ctx.zeta_pow(i as i64).sub(&ctx.zeta());

    let v1 = phi.iterate(&zero, 1);
    let v2 = phi.iterate(&zero, 2);
    let orbit_identity = v1 == expected && v2 == expected;

    let lhs = ctx.zeta_pow((p - i) as i64).mul(&v1);
    let rhs = ctx.one().sub(&ctx.zeta_pow((p - i + 1) as i64));
    let unit_rotation = lhs == rhs;

    let mut valuations = Vec::new();
    let mut val_ok = true;
    for n in 1..=n_max {
        let v = phi.iterate(&zero, n);
        let val = v.ramified_valuation().finite().unwrap_or(u64::MAX);
        val_ok &= val == 1;
        valuations.push((n, val));
    }

    // Expanded Eisenstein checks while p^n stays within the cap.
    let poly = CycPolynomial::from_map(&phi);
    let mut expanded_eisenstein = Vec::new();
    let mut iterate_poly = poly.clone();
    let mut expanded_up_to = 0u64;
    let mut exp_ok = true;
    for n in 1..=n_max {
        if iterate_poly.degree() > DEGREE_CAP {
            break;
        }
        exp_ok &= eisenstein_check(&iterate_poly, EisensteinMode::Standard);
        expanded_eisenstein.push(n);
        expanded_up_to = n;
        if n < n_max {
            let next_deg = iterate_poly.degree() * poly.degree();
            if next_deg > DEGREE_CAP {
                break;
            }
            iterate_poly = poly.compose(&iterate_poly);
        }
    }

    let complete = expanded_up_to == n_max;
    Ok(CorollaryCertificate {
        p,
        i,
        orbit_identity,
        unit_rotation,
        valuations,
        expanded_eisenstein,
        expanded_up_to,
        valuation_up_to: n_max,
        complete,
        verdict: orbit_identity && unit_rotation && val_ok && exp_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::cyclotomic_unicritical_map;

    fn ctx(p: u32) -> CyclotomicContext {
        CyclotomicContext::new(p).unwrap()
    }

    /// f = x^p + (1 - zeta_p).
    fn base_poly(c: CyclotomicContext) -> CycPolynomial {
        let p = c.p() as usize;
        let mut coeffs = vec![c.zero(); p + 1];
        coeffs[0] = c.one().sub(&c.zeta());
        coeffs[p] = c.one();
        CycPolynomial::new(c, coeffs).unwrap()
    }

    #[test]
    fn base_polynomial_is_strong() {
        for p in [3u32, 5, 7] {
            let f = base_poly(ctx(p));
            assert!(eisenstein_check(&f, EisensteinMode::Strong));
            assert!(eisenstein_check(&f, EisensteinMode::Standard));
        }
    }

    #[test]
    fn phi_p_is_eisenstein() {
        for p in [3u32, 5, 7] {
            let c = ctx(p);
            let phi = cyclotomic_unicritical_map(c);
            let poly = CycPolynomial::from_map(&phi);
            assert!(eisenstein_check(&poly, EisensteinMode::Standard));
            // Middle coefficients have nu = nu(p) = p - 1 > 1.
            assert!(eisenstein_check(&poly, EisensteinMode::Strong));
        }
    }

    #[test]
    fn non_eisenstein_rejected() {
        let c = ctx(3);
        // x^2 + 1: nu(constant) = 0.
        let f = CycPolynomial::new(c, vec![c.one(), c.zero(), c.one()]).unwrap();
        assert!(!eisenstein_check(&f, EisensteinMode::Standard));
    }

    #[test]
    fn translate_identity_at_zero() {
        let c = ctx(5);
        let f = base_poly(c);
        let (ok, g) = translate_check(&f, &c.zero()).unwrap();
        assert!(ok);
        assert_eq!(g, f);
    }

    #[test]
    fn translate_by_minus_zeta_powers() {
        for p in [3u32, 5, 7] {
            let c = ctx(p);
            let f = base_poly(c);
            for i in 2..=p {
                let alpha = -&c.zeta_pow(i as i64);
                let (ok, g) = translate_check(&f, &alpha).unwrap();
                assert!(ok, "p={p} i={i}");
                // g = (x - zeta^i)^p + 2 - zeta: check the constant term.
                let expect_const = (-&c.zeta_pow(i as i64))
                    .pow(p as u64)
                    .add(&c.from_i64(2))
                    .sub(&c.zeta());
                assert_eq!(g.constant_term(), &expect_const);
                // Middle coefficients all have nu > 1.
                assert!(eisenstein_check(&g, EisensteinMode::Strong));
            }
        }
    }

    #[test]
    fn translate_requires_strong_hypotheses() {
        let c = ctx(3);
        let f =
            CycPolynomial::new(c, vec![c.one(), c.zero(), c.zero(), c.one()]).unwrap();
        assert!(matches!(
            translate_check(&f, &c.zero()),
            Err(Error::LemmaHypotheses)
        ));
    }

    #[test]
    fn corollary_family() {
        let cert = corollary_family_check(3, 2, 3).unwrap();
        assert!(cert.verdict);
        assert!(cert.orbit_identity);
        assert!(cert.unit_rotation);
        // Degree 27 iterate fits under the cap.
        assert_eq!(cert.expanded_up_to, 3);
        assert!(cert.complete);

        // phi_{(p,p)} recovers the map with gamma = 1: (x-1)^p + 2 - zeta.
        let c = ctx(5);
        let phi = conjugated_map(c, 5);
        let standard = cyclotomic_unicritical_map(c);
        assert_eq!(
            CycPolynomial::from_map(&phi),
            CycPolynomial::from_map(&standard)
        );

        // p=7, n_max=3: degree 343 exceeds the cap, partial coverage only.
        let cert = corollary_family_check(7, 4, 3).unwrap();
        assert!(!cert.complete);
        assert_eq!(cert.expanded_up_to, 2);
        assert!(cert.verdict);
        assert_eq!(cert.valuations.len(), 3);
    }

    #[test]
    fn equal_valuation_of_rotated_units() {
        // (1 - zeta^m) and (1 - zeta) have the same nu for m not 0 mod p.
        for p in [3u32, 5, 7] {
            let c = ctx(p);
            for m in 1..p {
                let v = c.one().sub(&c.zeta_pow(m as i64)).ramified_valuation();
                assert_eq!(v, Valuation::Finite(1), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn composition_constant_term_matches_iteration() {
        let c = ctx(3);
        let phi = cyclotomic_unicritical_map(c);
        let poly = CycPolynomial::from_map(&phi);
        let mut it = poly.clone();
        for n in 1..=4u64 {
            assert_eq!(it.constant_term(), &phi.iterate(&c.zero(), n), "n={n}");
            if n < 4 {
                it = poly.compose(&it);
            }
        }
    }
}
