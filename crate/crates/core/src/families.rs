//! The two families and their invariants.
//!
//! `F_s(t): y^2 = x^3 + 3t x^2 + 3s x + s t` and
//! `L_{w,s,v}(t) = F_{s w^2}(w (t^2 + v))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arithmetic::is_integral;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FFamily {
    #[serde(with = "crate::dec::big")]
    pub s: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LFamily {
    #[serde(with = "crate::dec::rat")]
    pub w: BigRational,
    #[serde(with = "crate::dec::rat")]
    pub s: BigRational,
    #[serde(with = "crate::dec::rat")]
    pub v: BigRational,
}

/// The arithmetic progression `t = a u + b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    #[serde(with = "crate::dec::big")]
    pub a: BigInt,
    #[serde(with = "crate::dec::big")]
    pub b: BigInt,
}

impl Progression {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidProgression("a must be nonzero".into()));
        }
        if b.is_zero() {
            return Err(Error::InvalidProgression("b must be nonzero".into()));
        }
        Ok(Progression { a, b })
    }

    pub fn at(&self, u: &BigInt) -> BigInt {
        &self.a * u + &self.b
    }
}

/// `(c4, c6, Delta)` of a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    #[serde(with = "crate::dec::rat")]
    pub c4: BigRational,
    #[serde(with = "crate::dec::rat")]
    pub c6: BigRational,
    #[serde(with = "crate::dec::rat")]
    pub delta: BigRational,
}

/// Invariants of `y^2 = x^3 + a2 x^2 + a4 x + a6`.
pub fn invariants_from_weierstrass(
    a2: &BigRational,
    a4: &BigRational,
    a6: &BigRational,
) -> Invariants {
    let n = |k: i64| BigRational::from_integer(BigInt::from(k));
    let b2 = n(4) * a2;
    let b4 = n(2) * a4;
    let b6 = n(4) * a6;
    let b8 = n(4) * a2 * a6 - a4 * a4;
    let c4 = &b2 * &b2 - n(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + n(36) * &b2 * &b4 - n(216) * &b6;
    let delta = -(&b2 * &b2 * &b8) - n(8) * &b4 * &b4 * &b4 - n(27) * &b6 * &b6
        + n(9) * &b2 * &b4 * &b6;
    Invariants { c4, c6, delta }
}

/// Closed-form invariants of `F_s(t)`.
pub fn f_invariants(s: &BigRational, t: &BigRational) -> Invariants {
    let n = |k: i64| BigRational::from_integer(BigInt::from(k));
    let b = t * t - s;
    Invariants {
        c4: n(144) * &b,
        c6: n(-1728) * t * &b,
        delta: n(-1728) * s * &b * &b,
    }
}

/// Weierstrass coefficients `(a2, a4, a6)` of `F_s(t)`.
pub fn f_coefficients(s: &BigRational, t: &BigRational) -> (BigRational, BigRational, BigRational) {
    let three = BigRational::from_integer(BigInt::from(3));
    (&three * t, &three * s, s * t)
}

/// `(S, T)` with `L_{w,s,v}(t) = F_S(T)`.
pub fn l_to_f(
    w: &BigRational,
    s: &BigRational,
    v: &BigRational,
    t: &BigRational,
) -> (BigRational, BigRational) {
    (s * w * w, w * (t * t + v))
}

/// Integral `(S, T)` for a fibre of `L`, or an error naming what fails.
pub fn l_to_f_integral(
    w: &BigRational,
    s: &BigRational,
    v: &BigRational,
    t: &BigRational,
) -> Result<(BigInt, BigInt)> {
    let (big_s, big_t) = l_to_f(w, s, v, t);
    if !is_integral(&big_s) {
        return Err(Error::NonIntegral(format!("S = s w^2 = {big_s}")));
    }
    if !is_integral(&big_t) {
        return Err(Error::NonIntegral(format!("T = w (t^2 + v) = {big_t}")));
    }
    Ok((big_s.to_integer(), big_t.to_integer()))
}

pub fn is_singular(s: &BigInt, t: &BigInt) -> bool {
    s.is_zero() || t * t == *s
}

pub fn is_singular_q(s: &BigRational, t: &BigRational) -> bool {
    s.is_zero() || t * t == *s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn weierstrass_examples() {
        let inv = invariants_from_weierstrass(&r(1), &r(-4), &r(1));
        assert_eq!((inv.c4, inv.c6, inv.delta), (r(208), r(-2080), r(2704)));
        let inv = invariants_from_weierstrass(&r(0), &r(0), &r(0));
        assert_eq!((inv.c4, inv.c6, inv.delta), (r(0), r(0), r(0)));
    }

    #[test]
    fn f_examples() {
        let inv = f_invariants(&r(-3), &r(1));
        assert_eq!((inv.c4, inv.c6, inv.delta), (r(576), r(-6912), r(82944)));
        let inv = f_invariants(&r(-972), &r(18));
        assert_eq!(inv.c4, r(1 << 8) * r(729));
        assert_eq!(inv.delta, r(1 << 16) * r(43046721));
    }

    #[test]
    fn l_examples() {
        assert_eq!(l_to_f(&r(7), &r(-588), &r(1), &r(2)), (r(-28812), r(35)));
        assert_eq!(l_to_f(&r(7), &r(-588), &r(1), &r(6)), (r(-28812), r(259)));
        let half = BigRational::new(1.into(), 2.into());
        assert!(l_to_f_integral(&r(1), &r(-3), &half, &r(0)).is_err());
    }

    #[test]
    fn singular() {
        assert!(is_singular(&BigInt::from(4), &BigInt::from(-2)));
        assert!(is_singular(&BigInt::from(0), &BigInt::from(5)));
        assert!(!is_singular(&BigInt::from(-3), &BigInt::from(0)));
    }
}
