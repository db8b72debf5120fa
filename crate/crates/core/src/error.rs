use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be nonzero")]
    Zero { what: &'static str },
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("jacobi modulus {0} must be odd and positive")]
    BadJacobiModulus(BigInt),
    #[error("delta = {0} must be even and nonzero")]
    BadDelta(BigInt),
    #[error("singular fibre at s = {s}, t = {t}")]
    SingularFibre { s: BigInt, t: BigInt },
    #[error("non-integral model: {0}")]
    NonIntegral(String),
    #[error("s = {0} is not of the form -3r^2")]
    NotMinus3Square(BigInt),
    #[error("s = {0} is not of the form -12k^4")]
    NotMinus12Fourth(BigInt),
    #[error("s = {0} is not of the form -12q^4 with q >= 5 prime")]
    NotMinus12PrimeFourth(BigInt),
    #[error("invalid progression: {0}")]
    InvalidProgression(String),
    #[error("no row of table {table} fires at p = {p} (s = {s}, t = {t})")]
    TableFallThrough { table: String, p: BigInt, s: BigInt, t: BigInt },
    #[error("rows {rows:?} of table {table} overlap at p = {p} (s = {s}, t = {t})")]
    TableOverlap { table: String, rows: Vec<u32>, p: BigInt, s: BigInt, t: BigInt },
    #[error("table data error at line {line}: {msg}")]
    TableData { line: usize, msg: String },
    #[error("family is not constant: {0}")]
    NotConstant(String),
    #[error("invalid window: u_min = {min} > u_max = {max}")]
    EmptyWindow { min: BigInt, max: BigInt },
    #[error("{0}")]
    Unavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
