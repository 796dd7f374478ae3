//! Exact-arithmetic engines for verifying the finite computations behind
//! arboreal Galois surjectivity results.
//!
//! The crate is organized around the objects those computations live on:
//!
//! - [`cyclotomic`]: arithmetic in Z[ζ_p], absolute norms, degree-one
//!   residue primes and the ramified valuation at (1 − ζ_p);
//! - [`dynamics`]: iteration of unicritical maps `(x − γ)^d + c` over exact
//!   rings and residue rings, with tail/cycle detection;
//! - [`maximality`]: the cyclotomic critical-orbit sieve certifying
//!   surjectivity for the degree-p maps at p = 3, 5, 7;
//! - [`quadfamily`]: the congruence sieve for the quadratic family over all
//!   primes below a bound, with per-prime certificates;
//! - [`index_bounds`]: certified evaluation of the effective index bound
//!   and numerical canonical-height estimation;
//! - [`finitefield`]: small prime fields, extensions, and power-residue
//!   solvability tests;
//! - [`hyperelliptic`]: point counts, L-polynomials, Jacobian orders and
//!   Cantor arithmetic in Mumford representation;
//! - [`mwsieve`]: torsion checks, index-injectivity tests and the
//!   Mordell–Weil sieve eliminating residue classes;
//! - [`eisenstein`]: Eisenstein-at-(1 − ζ_p) checks and the translated
//!   family of iterates.
//!
//! Everything is exact: big integers, big rationals, and directed-rounding
//! interval arithmetic where transcendental quantities appear. All public
//! certificate types serialize to deterministic JSON.

pub mod cyclotomic;
pub mod dynamics;
pub mod eisenstein;
pub mod error;
pub mod finitefield;
pub mod hyperelliptic;
pub mod index_bounds;
pub mod interval;
pub mod maximality;
pub mod mwsieve;
pub mod quadfamily;
pub mod util;

pub use error::{Error, Result};
