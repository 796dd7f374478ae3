use thiserror::Error;

/// Crate-wide error type. Variants carry the wording the operations promise.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed cyclotomic contexts")]
    MixedContexts,
    #[error("not a degree-one prime: |norm| = {0} is composite")]
    NotDegreeOnePrime(String),
    #[error("unit generates no prime")]
    UnitGeneratesNoPrime,
    #[error("no stabilization: orbit modulo {0} never entered a cycle")]
    NoStabilization(u64),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("Cantor arithmetic restricted to odd-degree models")]
    EvenDegreeModel,
    #[error("invalid divisor: u does not divide v^2 - f")]
    InvalidDivisor,
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("sieve requires independent generators")]
    DependentGenerators,
    #[error("raise precision")]
    RaisePrecision,
    #[error("orbit of 0 must be nonempty")]
    EmptyOrbit,
    #[error("modulus {0} is neither prime nor a prime power")]
    CompositeModulus(u64),
    #[error("lemma hypotheses not met")]
    LemmaHypotheses,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
