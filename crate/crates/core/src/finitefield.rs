//! Arithmetic in F_q and small extensions F_{q^k}, dense polynomials over
//! F_q, and the power-residue solvability tests the sieves reduce to.

use crate::error::{Error, Result};
use crate::util::primes::{inv_mod, is_prime_u64, mul_mod, pow_mod, prime_power_decompose};
use serde::Serialize;

/// F_{q^k} presented as F_q[x]/(modulus). The modulus is the
/// lexicographically smallest monic irreducible of degree k: candidate
/// constant-through-top coefficient tuples are scanned in increasing
/// base-q counter order, which makes every derived count reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtField {
    q: u64,
    k: usize,
    /// Monic modulus, low degree first, length k+1.
    modulus: Vec<u64>,
}

pub type ExtElem = Vec<u64>;

/// Construct F_{q^k}; q must be an odd prime and 1 <= k <= 6.
pub fn ext_field(q: u64, k: usize) -> Result<ExtField> {
    if !is_prime_u64(q) || q == 2 {
        return Err(Error::Invalid(format!("q = {q} is not an odd prime")));
    }
    if !(1..=6).contains(&k) {
        return Err(Error::Invalid(format!("extension degree {k} out of range 1..=6")));
    }
    let modulus = smallest_irreducible(q, k);
    Ok(ExtField { q, k, modulus })
}

fn smallest_irreducible(q: u64, k: usize) -> Vec<u64> {
    let mut counter = vec![0u64; k];
    loop {
        let mut f = counter.clone();
        f.push(1); // monic
        if poly_is_irreducible(q, &f) {
            return f;
        }
        // Increment the base-q counter, low digit first.
        let mut i = 0;
        loop {
            counter[i] += 1;
            if counter[i] < q {
                break;
            }
            counter[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible of degree {k} over F_{q}?");
        }
    }
}

/// Irreducibility of a monic f of degree k over F_q:
/// x^(q^k) = x mod f, and gcd(x^(q^(k/r)) - x, f) = 1 for primes r | k.
fn poly_is_irreducible(q: u64, f: &[u64]) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x = PolyFq::new(q, vec![0, 1]);
    let fpoly = PolyFq::new(q, f.to_vec());
    let frob_k = x.mod_pow_q_iterated(q, k, &fpoly);
    if frob_k != x.rem(&fpoly) {
        return false;
    }
    for r in [2usize, 3, 5] {
        if k % r == 0 {
            let frob = x.mod_pow_q_iterated(q, k / r, &fpoly);
            let diff = frob.sub(&x);
            if !diff.gcd(&fpoly).is_constant() {
                return false;
            }
        }
    }
    true
}

impl ExtField {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.q.pow(self.k as u32)
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.k]
    }

    pub fn one(&self) -> ExtElem {
        let mut e = vec![0; self.k];
        e[0] = 1;
        e
    }

    pub fn from_u64(&self, v: u64) -> ExtElem {
        let mut e = vec![0; self.k];
        e[0] = v % self.q;
        e
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.q).collect()
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.q - y) % self.q)
            .collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut raw = vec![0u64; 2 * self.k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                raw[i + j] = (raw[i + j] + mul_mod(x, y, self.q)) % self.q;
            }
        }
        // Reduce by the monic modulus.
        for i in (self.k..raw.len()).rev() {
            let c = raw[i];
            if c == 0 {
                continue;
            }
            raw[i] = 0;
            for (j, &m) in self.modulus[..self.k].iter().enumerate() {
                let idx = i - self.k + j;
                raw[idx] = (raw[idx] + self.q - mul_mod(c, m, self.q) % self.q) % self.q;
            }
        }
        raw.truncate(self.k);
        raw
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.size() - 2))
    }

    /// Quadratic character: 0 on zero, +1 on squares, -1 otherwise.
    pub fn quadratic_character(&self, a: &ExtElem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        let t = self.pow(a, (self.size() - 1) / 2);
        if t == self.one() {
            1
        } else {
            -1
        }
    }

    /// All field elements in base-q counter order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let total = self.size();
        (0..total).map(move |mut c| {
            let mut e = vec![0u64; self.k];
            for slot in e.iter_mut() {
                *slot = c % self.q;
                c /= self.q;
            }
            e
        })
    }

    /// Horner evaluation of a polynomial with F_q coefficients at an
    /// extension element.
    pub fn eval_poly(&self, coeffs: &[u64], x: &ExtElem) -> ExtElem {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = (acc[0] + c % self.q) % self.q;
        }
        acc
    }

    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.q)
    }
}

/// Dense polynomial over the prime field F_q, low degree first, trailing
/// zeros stripped; the zero polynomial has empty coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PolyFq {
    q: u64,
    c: Vec<u64>,
}

impl PolyFq {
    pub fn new(q: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % q).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyFq { q, c }
    }

    pub fn from_i64(q: u64, coeffs: &[i64]) -> Self {
        PolyFq::new(
            q,
            coeffs
                .iter()
                .map(|&x| x.rem_euclid(q as i64) as u64)
                .collect(),
        )
    }

    pub fn zero(q: u64) -> Self {
        PolyFq { q, c: vec![] }
    }

    pub fn one(q: u64) -> Self {
        PolyFq { q, c: vec![1] }
    }

    pub fn constant(q: u64, v: u64) -> Self {
        PolyFq::new(q, vec![v])
    }

    pub fn x(q: u64) -> Self {
        PolyFq::new(q, vec![0, 1])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// None encodes degree(0) = -infinity.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        *self.c.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &PolyFq) -> PolyFq {
        assert_eq!(self.q, o.q);
        let n = self.c.len().max(o.c.len());
        PolyFq::new(
            self.q,
            (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, o: &PolyFq) -> PolyFq {
        assert_eq!(self.q, o.q);
        let n = self.c.len().max(o.c.len());
        PolyFq::new(
            self.q,
            (0..n)
                .map(|i| self.coeff(i) + self.q - o.coeff(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyFq {
        PolyFq::new(self.q, self.c.iter().map(|&x| self.q - x).collect())
    }

    pub fn mul(&self, o: &PolyFq) -> PolyFq {
        assert_eq!(self.q, o.q);
        if self.is_zero() || o.is_zero() {
            return PolyFq::zero(self.q);
        }
        let mut raw = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                raw[i + j] = (raw[i + j] + mul_mod(x, y, self.q)) % self.q;
            }
        }
        PolyFq { q: self.q, c: raw }.normalized()
    }

    fn normalized(mut self) -> PolyFq {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    pub fn scale(&self, s: u64) -> PolyFq {
        PolyFq::new(
            self.q,
            self.c.iter().map(|&x| mul_mod(x, s % self.q, self.q)).collect(),
        )
    }

    pub fn monic(&self) -> PolyFq {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.q).expect("q prime");
        self.scale(inv)
    }

    pub fn div_rem(&self, d: &PolyFq) -> (PolyFq, PolyFq) {
        assert_eq!(self.q, d.q);
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = inv_mod(d.leading(), self.q).expect("q prime");
        let mut rem = self.c.clone();
        let mut quo = vec![0u64; self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let coef = mul_mod(*rem.last().unwrap(), inv_lead, self.q);
            if coef != 0 {
                quo[k - dd] = coef;
                for (j, &m) in d.c.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = (rem[idx] + self.q - mul_mod(coef, m, self.q)) % self.q;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (
            PolyFq { q: self.q, c: quo }.normalized(),
            PolyFq { q: self.q, c: rem }.normalized(),
        )
    }

    pub fn rem(&self, d: &PolyFq) -> PolyFq {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &PolyFq) -> PolyFq {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns monic g and (s, t) with g = s*self + t*o.
    pub fn xgcd(&self, o: &PolyFq) -> (PolyFq, PolyFq, PolyFq) {
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyFq::one(q), PolyFq::zero(q));
        let (mut t0, mut t1) = (PolyFq::zero(q), PolyFq::one(q));
        while !r1.is_zero() {
            let (quo, rem) = r0.div_rem(&r1);
            (r0, r1) = (r1, rem);
            let ns = s0.sub(&quo.mul(&s1));
            (s0, s1) = (s1, ns);
            let nt = t0.sub(&quo.mul(&t1));
            (t0, t1) = (t1, nt);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), q).expect("q prime");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.c.iter().rev() {
            acc = (mul_mod(acc, x % self.q, self.q) + c) % self.q;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, m: &PolyFq) -> PolyFq {
        let mut acc = PolyFq::one(self.q).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// x |-> x^(q^steps) mod m, by repeated q-powering.
    fn mod_pow_q_iterated(&self, q: u64, steps: usize, m: &PolyFq) -> PolyFq {
        let mut acc = self.rem(m);
        for _ in 0..steps {
            acc = acc.pow_mod(q, m);
        }
        acc
    }

    /// Shift: self(x + a).
    pub fn compose_x_plus(&self, a: u64) -> PolyFq {
        // Horner on the shifted variable.
        let mut acc = PolyFq::zero(self.q);
        let shift = PolyFq::new(self.q, vec![a % self.q, 1]);
        for &c in self.c.iter().rev() {
            acc = acc.mul(&shift);
            acc = acc.add(&PolyFq::constant(self.q, c));
        }
        acc
    }
}

/// Does y^e = v * u^(-1)... i.e. does there exist y with v = u * y^e mod m?
///
/// m must be a prime or a prime power. For prime m with both sides units the
/// decision is the exponent test (v/u)^((m-1)/gcd(e, m-1)) = 1; prime powers
/// fall back to an exhaustive scan.
pub fn power_residue_solvable(v: u64, u: u64, m: u64, e: u32) -> Result<bool> {
    let (r, j) = prime_power_decompose(m).ok_or(Error::CompositeModulus(m))?;
    let v = v % m;
    let u = u % m;
    if u == 0 {
        return Ok(v == 0);
    }
    if v == 0 {
        return Ok(true); // y = 0
    }
    if j == 1 && v % r != 0 && u % r != 0 {
        let g = gcd_u64(e as u64, m - 1);
        let ui = inv_mod(u, m).expect("unit");
        let w = mul_mod(v, ui, m);
        return Ok(pow_mod(w, (m - 1) / g, m) == 1);
    }
    if m > 1_000_000 {
        return Err(Error::SizeCapExceeded(format!(
            "exhaustive power-residue scan for modulus {m}"
        )));
    }
    for y in 0..m {
        if mul_mod(u, pow_mod(y, e as u64, m), m) == v {
            return Ok(true);
        }
    }
    Ok(false)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic square root mod an odd prime: the smaller of the two
/// roots, or None if v is a non-residue.
pub fn sqrt_mod(v: u64, q: u64) -> Option<u64> {
    let v = v % q;
    if v == 0 {
        return Some(0);
    }
    if pow_mod(v, (q - 1) / 2, q) != 1 {
        return None;
    }
    // Fields in scope are tiny; a scan is exact and dependency-free.
    (1..=q / 2).find(|&r| mul_mod(r, r, q) == v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        // k=1: the polynomial x itself.
        let f = ext_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        // Over F_3, x^2 + 1 is the first irreducible quadratic.
        let f = ext_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // Over F_5, x^2 + 2 comes before x^2 + 3 and x^2 + x + 1.
        let f = ext_field(5, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 0, 1]);
    }

    #[test]
    fn group_order_and_frobenius() {
        let f = ext_field(5, 2).unwrap();
        for a in f.elements() {
            if !f.is_zero(&a) {
                assert_eq!(f.pow(&a, f.size() - 1), f.one());
            }
        }
        let f = ext_field(3, 3).unwrap();
        // Frobenius has order 3 on F_27.
        let mut nontrivial = false;
        for a in f.elements() {
            let f1 = f.frobenius(&a);
            let f3 = f.frobenius(&f.frobenius(&f1));
            assert_eq!(f3, a);
            if f1 != a {
                nontrivial = true;
            }
        }
        assert!(nontrivial);
    }

    #[test]
    fn field_axioms_random() {
        // Deterministic pseudo-random triples; checks the ring identities.
        for (q, k) in [(3u64, 2usize), (5, 2), (7, 3), (11, 1)] {
            let f = ext_field(q, k).unwrap();
            let mut state = 0x9E3779B97F4A7C15u64;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                state
            };
            let rand_elem = |s: u64| -> ExtElem {
                let mut e = vec![0u64; k];
                let mut v = s;
                for slot in e.iter_mut() {
                    *slot = v % q;
                    v /= q;
                }
                e
            };
            for _ in 0..1000 {
                let a = rand_elem(next());
                let b = rand_elem(next());
                let c = rand_elem(next());
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.add(&a, &b), f.add(&b, &a));
                assert_eq!(
                    f.mul(&f.mul(&a, &b), &c),
                    f.mul(&a, &f.mul(&b, &c))
                );
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                if !f.is_zero(&a) {
                    let inv = f.inv(&a).unwrap();
                    assert_eq!(f.mul(&a, &inv), f.one());
                }
            }
        }
    }

    #[test]
    fn poly_division_and_gcd() {
        let q = 7;
        let a = PolyFq::from_i64(q, &[1, 0, 2, 1]); // x^3 + 2x^2 + 1
        let b = PolyFq::from_i64(q, &[3, 1]); // x + 3
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(rem.degree() < b.degree());

        let f = PolyFq::from_i64(q, &[-1, 0, 1]); // (x-1)(x+1)
        let g = PolyFq::from_i64(q, &[-1, 1]); // x-1
        assert_eq!(f.gcd(&g), g.monic());

        let (d, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), d);
    }

    #[test]
    fn power_residue_examples() {
        // 6 = 2 * y^3 (mod 7) and 6 = 4 * y^3 (mod 7) have no solutions.
        assert!(!power_residue_solvable(6, 2, 7, 3).unwrap());
        assert!(!power_residue_solvable(6, 4, 7, 3).unwrap());
        // 4 is not a cube in F_7; 6 and 1 are.
        assert!(!power_residue_solvable(4, 1, 7, 3).unwrap());
        assert!(power_residue_solvable(6, 1, 7, 3).unwrap());
        // 30 = 2*3*y^5 (mod 31) is solvable.
        assert!(power_residue_solvable(30, 6, 31, 5).unwrap());
        // Zero cases.
        assert!(power_residue_solvable(0, 5, 13, 3).unwrap());
        assert!(!power_residue_solvable(5, 0, 13, 3).unwrap());
        assert!(power_residue_solvable(0, 0, 13, 3).unwrap());
        // Composite moduli are rejected.
        assert!(matches!(
            power_residue_solvable(1, 1, 12, 2),
            Err(Error::CompositeModulus(12))
        ));
        // Prime powers go through the scan: squares mod 16 are {0,1,4,9}.
        assert!(power_residue_solvable(9, 1, 16, 2).unwrap());
        assert!(!power_residue_solvable(5, 1, 16, 2).unwrap());
    }

    #[test]
    fn solvability_agrees_with_enumeration() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            state
        };
        for m in [3u64, 5, 7, 11, 13, 31, 43, 61, 127, 463, 547, 599] {
            for e in [2u32, 3, 5, 7] {
                for _ in 0..40 {
                    let v = next() % m;
                    let u = next() % m;
                    let fast = power_residue_solvable(v, u, m, e).unwrap();
                    let brute = (0..m).any(|y| mul_mod(u, pow_mod(y, e as u64, m), m) == v);
                    assert_eq!(fast, brute, "v={v} u={u} m={m} e={e}");
                }
            }
        }
    }

    #[test]
    fn sqrt_mod_examples() {
        assert_eq!(sqrt_mod(4, 7), Some(2));
        assert_eq!(sqrt_mod(3, 7), None);
        assert_eq!(sqrt_mod(0, 11), Some(0));
        assert_eq!(sqrt_mod(2, 7), Some(3)); // 3^2=9=2, 4^2=16=2; smaller is 3
        for q in [5u64, 13, 53] {
            for v in 0..q {
                match sqrt_mod(v, q) {
                    Some(r) => assert_eq!(mul_mod(r, r, q), v),
                    None => assert!((0..q).all(|y| mul_mod(y, y, q) != v)),
                }
            }
        }
    }
}
