use thiserror::Error;

/// Errors raised by every monoid module in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator {0} is not a positive integer")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("monoid is all of N (1 is a generator)")]
    DegenerateMonoid,
    #[error("monoid is too large to tabulate (sieve bound {0})")]
    MonoidTooLarge(u64),
    #[error("{0} is not an element of the monoid")]
    NotAMember(String),
    #[error("omega is only defined on non-unit elements")]
    ZeroElement,
    #[error("vector has {found} coordinates, monoid has {expected} generators")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("search budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("factorization must be non-zero")]
    ZeroFactorization,
    #[error("{n} is below the certified threshold {threshold} of the residue formula")]
    BelowThreshold { n: i64, threshold: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series too short: need at least {needed} members, have {have}")]
    SeriesTooShort { needed: usize, have: usize },
    #[error("top window of the series is not quasilinear (first conflict at n = {at})")]
    WindowUnstable { at: i64 },
    #[error("n = {0} is not above the Frobenius number")]
    BelowFrobenius(i64),
    #[error("group element {0:?} is out of range")]
    ElementOutOfRange(Vec<u32>),
    #[error("sequence does not sum to zero")]
    NotZeroSum,
    #[error("{a}^2 is not congruent to {a} mod {b}")]
    NotIdempotent { a: u64, b: u64 },
    #[error("omega is only implemented for congruence monoids with a = 1 (got a = {0})")]
    NotRegularUnit(u64),
    #[error("could not factor {0} within budget")]
    FactorizationFailed(u64),
    #[error("step {0} lies in the numerical monoid")]
    StepInGamma(u64),
    #[error("box ({n_max}, {k_max}) is too small: {reason}")]
    BoxTooSmall { n_max: u64, k_max: u64, reason: String },
    #[error("no multiple of atom {atom:?} below {limit} is divisible by the target")]
    CapNotFound { atom: (u64, u64), limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
