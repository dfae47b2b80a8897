use thiserror::Error;

/// Errors produced by the algebra engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed root of unity {0:?}: expected \"a/m\" with m >= 1")]
    MalformedRoot(String),

    #[error("cyclotomic level must be >= 1")]
    ZeroLevel,

    #[error("cannot embed level {from} into level {to}: {from} does not divide {to}")]
    BadEmbedding { from: u64, to: u64 },

    #[error("root {root} has order not dividing {modulus}")]
    OrderNotDividing { root: String, modulus: u64 },

    #[error("character inner product is not a non-negative integer: {0}")]
    NonIntegralMultiplicity(String),

    #[error("representation relation check failed: {0}")]
    RelationFailure(String),

    #[error("mixed coefficient domains: {0} vs {1}")]
    MixedDomains(String, String),

    #[error("unsupported generator pair {0} * {1}: target degree {2} exceeds 2")]
    UnsupportedPair(String, String, u32),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(String, String),

    #[error("differential does not square to zero at degree {0}")]
    NotAComplex(usize),

    #[error("colimit did not stabilize within {levels} levels (window {window})")]
    NoStabilization { levels: u32, window: u32 },

    #[error("ring is not closed under products: {0}")]
    NotClosed(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by caller input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedRoot(_)
                | Error::ZeroLevel
                | Error::BadEmbedding { .. }
                | Error::OrderNotDividing { .. }
                | Error::MixedDomains(..)
                | Error::UnsupportedPair(..)
                | Error::NotPrime(_)
                | Error::InvalidParameter(_)
                | Error::ResourceGuard(_)
                | Error::NotAUnit(..)
                | Error::NoStabilization { .. }
                | Error::NotClosed(_)
        )
    }
}
