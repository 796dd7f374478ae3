//! Iteration of unicritical maps (x - gamma)^d + c over exact rings and
//! over residue rings, with exact tail/cycle detection and the
//! primitive-prime-divisor filter.

use crate::cyclotomic::{reduce, CycInt, ResiduePrime};
use crate::error::{Error, Result};
use crate::util::primes::pow_mod;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;

/// Minimal ring surface the iterator needs. Implemented for BigInt and
/// CycInt; values are immutable and operations pure.
pub trait RingOps: Clone + PartialEq {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl RingOps for BigInt {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl RingOps for CycInt {
    fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("mixed cyclotomic contexts")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("mixed cyclotomic contexts")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("mixed cyclotomic contexts")
    }
}

/// x^e for e >= 1 by binary powering (no multiplicative identity needed).
fn pow_positive<R: RingOps>(x: &R, e: u32) -> R {
    assert!(e >= 1);
    let mut acc: Option<R> = None;
    let mut base = x.clone();
    let mut e = e;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = base.mul(&base);
    }
    acc.unwrap()
}

/// The map x |-> (x - gamma)^d + c over a carrier ring R.
#[derive(Clone, Debug, PartialEq)]
pub struct UnicriticalMap<R> {
    degree: u32,
    gamma: R,
    c: R,
}

impl<R: RingOps> UnicriticalMap<R> {
    pub fn new(degree: u32, gamma: R, c: R) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Invalid(format!("map degree {degree} < 2")));
        }
        Ok(UnicriticalMap { degree, gamma, c })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn gamma(&self) -> &R {
        &self.gamma
    }

    pub fn c(&self) -> &R {
        &self.c
    }

    pub fn eval(&self, x: &R) -> R {
        pow_positive(&x.sub(&self.gamma), self.degree).add(&self.c)
    }

    /// phi^n(x0); phi^0 is the identity.
    pub fn iterate(&self, x0: &R, n: u64) -> R {
        let mut x = x0.clone();
        for _ in 0..n {
            x = self.eval(&x);
        }
        x
    }

    /// The first `len + 1` orbit values x0, phi(x0), ..., phi^len(x0).
    pub fn orbit(&self, x0: &R, len: usize) -> Vec<R> {
        let mut out = Vec::with_capacity(len + 1);
        out.push(x0.clone());
        for _ in 0..len {
            let next = self.eval(out.last().unwrap());
            out.push(next);
        }
        out
    }
}

/// The quadratic family phi_p(x) = (x - p)^2 + 2p - p^2 over Z.
pub fn quadratic_family_map(p: u64) -> UnicriticalMap<BigInt> {
    let pb = BigInt::from(p);
    let c = BigInt::from(2) * &pb - &pb * &pb;
    UnicriticalMap::new(2, pb, c).unwrap()
}

/// The variant f_p(x) = (x - p)^2 - p^2 - 1 over Z.
pub fn f_family_map(p: u64) -> UnicriticalMap<BigInt> {
    let pb = BigInt::from(p);
    let c = -(&pb * &pb) - BigInt::from(1);
    UnicriticalMap::new(2, pb, c).unwrap()
}

/// Which residue ring an orbit was computed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusDesc {
    Integer(u64),
    ResiduePrime { ell: u64, root: u64 },
}

/// Orbit of a residue under the reduced map: exact tail length and cycle.
///
/// `raw_prefix[i]` is the value at iterate i (index 0 is the start);
/// `raw_prefix[tail]` begins the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTrace {
    pub modulus: ModulusDesc,
    pub tail: usize,
    pub cycle: Vec<u64>,
    pub raw_prefix: Vec<u64>,
}

impl OrbitTrace {
    /// The orbit value at iterate n (any n >= 0).
    pub fn value_at(&self, n: usize) -> u64 {
        if n < self.tail {
            self.raw_prefix[n]
        } else {
            self.cycle[(n - self.tail) % self.cycle.len()]
        }
    }

    /// True when the values from iterate n0 onward repeat `claimed`
    /// cyclically, anchored at n0 up to rotation of the claimed cycle.
    pub fn matches_cycle_from(&self, claimed: &[u64], n0: usize) -> bool {
        if self.tail > n0 || claimed.len() != self.cycle.len() {
            return false;
        }
        let len = claimed.len();
        (0..len).any(|rot| {
            (0..len).all(|i| self.value_at(n0 + i) == claimed[(rot + i) % len])
        })
    }
}

impl Serialize for OrbitTrace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrbitTrace", 3)?;
        match &self.modulus {
            ModulusDesc::Integer(m) => st.serialize_field("modulus", m)?,
            ModulusDesc::ResiduePrime { ell, root } => {
                #[derive(Serialize)]
                struct Rp {
                    ell: u64,
                    root: u64,
                }
                st.serialize_field("modulus", &Rp { ell: *ell, root: *root })?
            }
        }
        st.serialize_field("tail", &self.tail)?;
        st.serialize_field("cycle", &self.cycle)?;
        st.end()
    }
}

fn orbit_mod_raw(degree: u32, gamma: u64, c: u64, x0: u64, m: u64, desc: ModulusDesc) -> OrbitTrace {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut values = vec![x0 % m];
    loop {
        let x = *values.last().unwrap();
        if let Some(&first) = seen.get(&x) {
            let tail = first;
            let cycle = values[first..values.len() - 1].to_vec();
            let raw_prefix = values[..values.len() - 1].to_vec();
            return OrbitTrace { modulus: desc, tail, cycle, raw_prefix };
        }
        seen.insert(x, values.len() - 1);
        let next = (pow_mod((x + m - gamma) % m, degree as u64, m) + c) % m;
        values.push(next);
    }
}

fn big_mod(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Orbit of x0 under an integer map, reduced mod m (m >= 2).
pub fn orbit_mod_int(map: &UnicriticalMap<BigInt>, x0: &BigInt, m: u64) -> Result<OrbitTrace> {
    if m < 2 {
        return Err(Error::Invalid(format!("modulus {m} < 2")));
    }
    Ok(orbit_mod_raw(
        map.degree,
        big_mod(&map.gamma, m),
        big_mod(&map.c, m),
        big_mod(x0, m),
        m,
        ModulusDesc::Integer(m),
    ))
}

/// Orbit of x0 under a cyclotomic map, reduced at a residue prime.
pub fn orbit_mod_cyc(
    map: &UnicriticalMap<CycInt>,
    x0: &CycInt,
    q: &ResiduePrime,
) -> Result<OrbitTrace> {
    let m = q.n();
    Ok(orbit_mod_raw(
        map.degree,
        reduce(&map.gamma, q)?,
        reduce(&map.c, q)?,
        reduce(x0, q)?,
        m,
        ModulusDesc::ResiduePrime { ell: q.ell(), root: q.root() },
    ))
}

/// True iff q divides no element of the (finite, caller-certified) forward
/// orbit of 0 — so any q dividing phi^n(gamma) is a primitive divisor.
pub fn primitive_prime_filter_int(orbit0: &[BigInt], q: &BigInt) -> Result<bool> {
    if orbit0.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    Ok(orbit0.iter().all(|v| !(v % q).is_zero()))
}

/// Cyclotomic version: divisibility read through the reduction map.
pub fn primitive_prime_filter_cyc(orbit0: &[CycInt], q: &ResiduePrime) -> Result<bool> {
    if orbit0.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    for v in orbit0 {
        if reduce(v, q)? == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cyclotomic map phi_p(x) = (x - 1)^p + (2 - zeta_p).
pub fn cyclotomic_unicritical_map(
    ctx: crate::cyclotomic::CyclotomicContext,
) -> UnicriticalMap<CycInt> {
    let one = ctx.one();
    let c = &ctx.from_i64(2) - &ctx.zeta();
    UnicriticalMap::new(ctx.p(), one, c).unwrap()
}

/// delta_p(x) = x^p + 1 - zeta_p (the conjugated model with gamma = 0).
pub fn delta_map(ctx: crate::cyclotomic::CyclotomicContext) -> UnicriticalMap<CycInt> {
    let c = &ctx.one() - &ctx.zeta();
    UnicriticalMap::new(ctx.p(), ctx.zero(), c).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{ramified_prime, residue_prime, CyclotomicContext};

    #[test]
    fn exact_iteration_examples() {
        // phi_p over Z[zeta_p]: phi(0) = 1 - zeta, phi(1 - zeta) = 1 - zeta.
        for p in [3u32, 5, 7] {
            let ctx = CyclotomicContext::new(p).unwrap();
            let phi = cyclotomic_unicritical_map(ctx);
            let omz = &ctx.one() - &ctx.zeta();
            assert_eq!(phi.iterate(&ctx.zero(), 1), omz);
            assert_eq!(phi.iterate(&omz, 1), omz);
            // 0 is strictly preperiodic: phi^n(0) = 1 - zeta for 1 <= n <= 10.
            for n in 1..=10 {
                assert_eq!(phi.iterate(&ctx.zero(), n), omz);
            }
        }
        // Quadratic p=3: phi(x) = (x-3)^2 - 3; phi^2(3) = 33.
        let phi = quadratic_family_map(3);
        assert_eq!(phi.iterate(&BigInt::from(3), 2), BigInt::from(33));
        assert_eq!(phi.iterate(&BigInt::from(3), 3), BigInt::from(897));
    }

    #[test]
    fn semigroup_property() {
        let phi = quadratic_family_map(5);
        let x0 = BigInt::from(5);
        for m in 0..4u64 {
            for n in 0..4u64 {
                assert_eq!(
                    phi.iterate(&x0, m + n),
                    phi.iterate(&phi.iterate(&x0, m), n)
                );
            }
        }
    }

    #[test]
    fn orbit_traces_cyclotomic() {
        let ctx = CyclotomicContext::new(3).unwrap();
        let phi = cyclotomic_unicritical_map(ctx);
        let q = residue_prime(&ctx.linear(2, -1)).unwrap();
        let tr = orbit_mod_cyc(&phi, &ctx.one(), &q).unwrap();
        assert_eq!(tr.tail, 2);
        assert_eq!(tr.cycle, vec![6]);
        assert_eq!(tr.raw_prefix[0], 1);

        let q2 = residue_prime(&ctx.linear(3, 1)).unwrap();
        let tr2 = orbit_mod_cyc(&phi, &ctx.one(), &q2).unwrap();
        assert_eq!(tr2.tail, 3);
        assert_eq!(tr2.cycle, vec![4]);
    }

    #[test]
    fn orbit_traces_quadratic() {
        // p = 9 mod 13 enters the 2-cycle {6, 11}.
        let phi = quadratic_family_map(9 + 13 * 4); // p=61? any p=9 mod 13; map reduces mod 13
        let tr = orbit_mod_int(&phi, &BigInt::from(61), 13).unwrap();
        assert_eq!(tr.tail, 3);
        assert!(tr.matches_cycle_from(&[6, 11], 3));
        assert_eq!(tr.cycle.len(), 2);

        // Mod 2 the quadratic orbit of p is eventually the fixed point 1.
        let phi = quadratic_family_map(7);
        let tr = orbit_mod_int(&phi, &BigInt::from(7), 2).unwrap();
        assert_eq!(tr.cycle, vec![1]);
    }

    #[test]
    fn orbit_commutes_with_reduction() {
        let phi = quadratic_family_map(11);
        let x0 = BigInt::from(11);
        for m in [3u64, 5, 13, 16] {
            let tr = orbit_mod_int(&phi, &x0, m).unwrap();
            for n in 0..20usize {
                let exact = phi.iterate(&x0, n as u64);
                assert_eq!(big_mod(&exact, m), tr.value_at(n), "m={m} n={n}");
            }
        }
        // Same over the cyclotomic carrier.
        let ctx = CyclotomicContext::new(5).unwrap();
        let phi = cyclotomic_unicritical_map(ctx);
        let q = residue_prime(&ctx.linear(2, -1)).unwrap();
        let tr = orbit_mod_cyc(&phi, &ctx.one(), &q).unwrap();
        for n in 0..20usize {
            let exact = phi.iterate(&ctx.one(), n as u64);
            assert_eq!(reduce(&exact, &q).unwrap(), tr.value_at(n));
        }
    }

    #[test]
    fn critical_orbit_is_one_mod_ramified() {
        for p in [3u32, 5, 7] {
            let ctx = CyclotomicContext::new(p).unwrap();
            let phi = cyclotomic_unicritical_map(ctx);
            let q = ramified_prime(ctx);
            for n in 1..=10 {
                let v = phi.iterate(&ctx.one(), n);
                assert_eq!(reduce(&v, &q).unwrap(), 1, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn primitive_filter() {
        // Quadratic family: Orb(0) = {2p}.
        let orbit = vec![BigInt::from(6)];
        assert!(primitive_prime_filter_int(&orbit, &BigInt::from(7)).unwrap());
        assert!(!primitive_prime_filter_int(&orbit, &BigInt::from(2)).unwrap());
        assert!(matches!(
            primitive_prime_filter_int(&[], &BigInt::from(7)),
            Err(Error::EmptyOrbit)
        ));
        // f_p family: Orb(0) = {-1, 2p}; any q coprime to 2p passes.
        let phi = f_family_map(5);
        let o1 = phi.iterate(&BigInt::from(0), 1);
        let o2 = phi.iterate(&BigInt::from(0), 2);
        assert_eq!(o1, BigInt::from(-1));
        assert_eq!(o2, BigInt::from(10));
        assert_eq!(phi.iterate(&BigInt::from(0), 3), BigInt::from(-1));
        assert!(primitive_prime_filter_int(&[o1, o2], &BigInt::from(7)).unwrap());
    }

    #[test]
    fn orbit_trace_serialization() {
        let phi = quadratic_family_map(3);
        let tr = orbit_mod_int(&phi, &BigInt::from(3), 3).unwrap();
        let js = serde_json::to_value(&tr).unwrap();
        assert_eq!(js["modulus"], 3);
        assert_eq!(js["tail"], 2);
        assert_eq!(js["cycle"][0], 1);
    }
}
