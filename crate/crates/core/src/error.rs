use thiserror::Error;

/// Everything that can go wrong while building a monoid or computing an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no generators given")]
    EmptyGenerators,
    #[error("generators must be positive, got 0")]
    ZeroGenerator,
    #[error("generators share the common factor {gcd}; they do not generate a numerical monoid")]
    NonCoprime { gcd: i64 },
    #[error("arithmetic overflow while computing {context}")]
    Overflow { context: &'static str },
    #[error("target {0} is negative")]
    NegativeTarget(i64),
    #[error("{0} is not an element of the monoid")]
    NotInMonoid(i64),
    #[error("Apéry base must be positive, got {0}")]
    NonPositiveBase(i64),
    #[error("generator subset is empty")]
    EmptySubset,
    #[error("{0} is not a minimal generator of the monoid")]
    NotAGenerator(i64),
    #[error("horizon {horizon} is below the minimum {minimum}")]
    HorizonTooSmall { horizon: i64, minimum: i64 },
    #[error("target {target} lies below the dynamic base -F(S) = {base}")]
    TargetBelowBase { target: i64, base: i64 },
    #[error("{n} is not above the quasilinear threshold {threshold}; use the dynamic algorithm")]
    BelowThreshold { n: i64, threshold: i64 },
    #[error("operation needs at least two generators")]
    TooFewGenerators,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn overflow(context: &'static str) -> Error {
    Error::Overflow { context }
}

/// A vector of `len` copies of `fill`, or an overflow error if `len` does not
/// fit in memory.
pub(crate) fn filled<T: Clone>(len: i64, fill: T, context: &'static str) -> Result<Vec<T>> {
    let len = usize::try_from(len).map_err(|_| overflow(context))?;
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| overflow(context))?;
    v.resize(len, fill);
    Ok(v)
}
