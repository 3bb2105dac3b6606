use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NonOddPrime(u64),
    #[error("field of size {size} exceeds the configured cap {cap}")]
    TooLarge { size: u64, cap: u64 },
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("division by zero")]
    DivZero,
    #[error("discrete logarithm of zero")]
    DlogOfZero,
    #[error("Teichmuller lift of zero")]
    TeichOfZero,
    #[error("denominator {den} is divisible by p = {p}")]
    BadDenominator { den: i64, p: u64 },
    #[error("p-adic precision {m} is invalid: {reason}")]
    BadPrecision { m: u32, reason: String },
    #[error("p-adic modulus {p}^{m} exceeds the integer budget")]
    PrecisionTooLarge { p: u64, m: u32 },
    #[error("rational recognition failed: {0}")]
    RecognitionFailure(String),
    #[error("recognized value changed between precisions {low} and {high}")]
    PrecisionUnstable { low: u32, high: u32 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("family {family} is unsatisfiable over F_{q}: {reason}")]
    Unsatisfiable {
        family: String,
        q: u64,
        reason: String,
    },
    #[error("G-value paths disagree at t = {t}: closed form {fast}, p-adic {padic}")]
    PathDisagreement { t: String, fast: i64, padic: String },
    #[error("element parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
