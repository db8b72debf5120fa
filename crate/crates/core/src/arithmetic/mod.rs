//! Integer and rational arithmetic: valuations, quadratic symbols,
//! factorization and the two special forms of `s`.

mod forms;
mod primes;
mod symbols;
mod valuation;

pub use forms::{as_minus_12_fourth, as_minus_3_square};
pub use primes::{factorize, is_prime, Factorization};
pub use symbols::{jacobi, legendre, modified_jacobi};
pub use valuation::{
    is_integral, valuation, valuation_int, valuation_or_inf, valuation_q_or_inf, Valuation,
};

pub(crate) use symbols::legendre_unchecked;
pub(crate) use valuation::split_unchecked;
