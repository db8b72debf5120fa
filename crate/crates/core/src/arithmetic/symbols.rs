use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// Jacobi symbol of `a` modulo `n`, for `n` odd and positive.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i8> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::BadJacobiModulus(n.clone()));
    }
    Ok(jacobi_unchecked(a, n))
}

pub(crate) fn jacobi_unchecked(a: &BigInt, n: &BigInt) -> i8 {
    if let Some(nn) = n.to_u64() {
        let r = a.mod_floor(n).to_u64().unwrap();
        return jacobi_u64(r, nn);
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let n8 = (&n & BigInt::from(7u8)).to_u8().unwrap();
            if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let a4 = (&a & BigInt::from(3u8)).to_u8().unwrap();
        let n4 = (&n & BigInt::from(3u8)).to_u8().unwrap();
        if a4 == 3 && n4 == 3 {
            result = -result;
        }
        a = a.mod_floor(&n);
        if let Some(nn) = n.to_u64() {
            return result * jacobi_u64(a.to_u64().unwrap(), nn);
        }
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Jacobi symbol for `0 <= a` and odd `n >= 1`.
pub(crate) fn jacobi_u64(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut result = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let mut b2 = (b % m) as u128;
    let m2 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b2 % m2;
        }
        b2 = b2 * b2 % m2;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
///
/// Small moduli use Euler's criterion; larger ones go through reciprocity.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    if p <= &BigInt::from(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p.clone()));
    }
    Ok(legendre_unchecked(a, p))
}

pub(crate) fn legendre_unchecked(a: &BigInt, p: &BigInt) -> i8 {
    match p.to_u64() {
        Some(pp) if pp < (1 << 32) => {
            let r = a.mod_floor(p).to_u64().unwrap();
            if r == 0 {
                return 0;
            }
            if pow_mod_u64(r, (pp - 1) / 2, pp) == 1 {
                1
            } else {
                -1
            }
        }
        _ => jacobi_unchecked(a, p),
    }
}

/// `prod_{p odd, p not dividing delta} (a/p)^{nu_p(b)}`.
///
/// Stripping every prime of `delta` from `b` leaves an odd modulus on which the
/// ordinary Jacobi symbol computes exactly this product.
pub fn modified_jacobi(a: &BigInt, b: &BigInt, delta: &BigInt) -> Result<i8> {
    if a.is_zero() {
        return Err(Error::Zero { what: "a" });
    }
    if b.is_zero() {
        return Err(Error::Zero { what: "b" });
    }
    if delta.is_zero() || delta.is_odd() {
        return Err(Error::BadDelta(delta.clone()));
    }
    let mut m = b.abs();
    loop {
        let g = m.gcd(delta);
        if g.is_one() {
            break;
        }
        m /= g;
    }
    Ok(jacobi_unchecked(a, &m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn examples() {
        assert_eq!(legendre(&b(-3), &b(13)).unwrap(), 1);
        assert_eq!(legendre(&b(3), &b(5)).unwrap(), -1);
        assert!(legendre(&b(1), &b(2)).is_err());
        assert!(legendre(&b(1), &b(15)).is_err());
        assert_eq!(jacobi(&b(-1), &b(117)).unwrap(), 1);
        assert_eq!(jacobi(&b(2), &b(15)).unwrap(), 1);
        assert_eq!(jacobi(&b(12345), &b(1)).unwrap(), 1);
        assert!(jacobi(&b(3), &b(8)).is_err());
        assert!(jacobi(&b(3), &b(-7)).is_err());
        assert_eq!(modified_jacobi(&b(-1), &b(1872), &b(6)).unwrap(), 1);
        assert_eq!(modified_jacobi(&b(5), &b(21), &b(2)).unwrap(), 1);
        assert!(modified_jacobi(&b(5), &b(21), &b(3)).is_err());
    }

    #[test]
    fn big_modulus_matches_small_path() {
        let n: BigInt = "340282366920938463463374607431768211507".parse().unwrap();
        let a: BigInt = "123456789123456789123456789".parse().unwrap();
        // Reciprocity by hand: n = 3 mod 4 and 7 = 3 mod 4 flip the sign.
        assert_eq!(jacobi_unchecked(&b(7), &n), -jacobi_unchecked(&n, &b(7)));
        assert!(jacobi_unchecked(&a, &n).abs() <= 1);
        let x = b(7);
        let y = b(-11);
        assert_eq!(
            jacobi_unchecked(&(&x * &y), &n),
            jacobi_unchecked(&x, &n) * jacobi_unchecked(&y, &n)
        );
    }
}
