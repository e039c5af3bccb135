use thiserror::Error;

/// Errors raised by the verification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial has negative exponents (min exponent {0}); shift by a power of q first")]
    NegativeExponent(i64),
    #[error("cyclotomic index must be positive")]
    ZeroCyclotomicIndex,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("series denominator is identically zero")]
    ZeroSeriesDenominator,
    #[error("infinite product (q^{a}; q^{d}) is not a formal power series for a = {a}")]
    NonFormalProduct { a: i64, d: i64 },
    #[error("q-power exponent {0} is not an integer at k = {1}")]
    NonIntegralExponent(String, i64),
    #[error("denominator factor vanishes identically: {0}")]
    VanishingDenominator(String),
    #[error("invalid sum specification: {0}")]
    InvalidSpec(String),
    #[error("unknown case id `{0}`")]
    UnknownCase(String),
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("numeric oracle could not separate zero from nonzero at {digits} digits ({detail})")]
    OracleAmbiguous { digits: u32, detail: String },
    #[error("invalid case file: {0}")]
    CaseFile(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
