use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};

/// A p-adic valuation that may be infinite (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("INF"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Valuation, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Valuation::Finite(v)),
            Raw::Str(s) if s == "INF" => Ok(Valuation::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad valuation `{s}`"))),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "INF"),
        }
    }
}

fn check_base(p: &BigInt) -> Result<()> {
    if p < &BigInt::from(2) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(())
}

/// `(nu_p(x), x / p^nu)` for a nonzero integer `x`.
pub fn valuation_int(p: &BigInt, x: &BigInt) -> Result<(u64, BigInt)> {
    check_base(p)?;
    if x.is_zero() {
        return Err(Error::Zero { what: "x" });
    }
    Ok(split_unchecked(p, x))
}

pub(crate) fn split_unchecked(p: &BigInt, x: &BigInt) -> (u64, BigInt) {
    if p == &BigInt::from(2) {
        let k = x.trailing_zeros().unwrap_or(0);
        return (k, x >> k);
    }
    let mut k = 0u64;
    let mut cur = x.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return (k, cur);
        }
        cur = q;
        k += 1;
    }
}

/// `(nu_p(x), x / p^nu)` for a nonzero rational `x`.
pub fn valuation(p: &BigInt, x: &BigRational) -> Result<(i64, BigRational)> {
    check_base(p)?;
    if x.is_zero() {
        return Err(Error::Zero { what: "x" });
    }
    let (vn, un) = split_unchecked(p, x.numer());
    let (vd, ud) = split_unchecked(p, x.denom());
    Ok((vn as i64 - vd as i64, BigRational::new(un, ud)))
}

/// Valuation of an integer, `Infinite` at zero.
pub fn valuation_or_inf(p: &BigInt, x: &BigInt) -> Valuation {
    if x.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(split_unchecked(p, x).0 as i64)
    }
}

/// Valuation of a rational, `Infinite` at zero.
pub fn valuation_q_or_inf(p: &BigInt, x: &BigRational) -> Valuation {
    if x.is_zero() {
        Valuation::Infinite
    } else {
        let vn = split_unchecked(p, x.numer()).0 as i64;
        let vd = split_unchecked(p, x.denom()).0 as i64;
        Valuation::Finite(vn - vd)
    }
}

/// True when `x` has no denominator.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        let two = BigInt::from(2);
        assert_eq!(valuation(&two, &q(18, 1)).unwrap(), (1, q(9, 1)));
        assert_eq!(valuation(&3.into(), &q(-972, 1)).unwrap(), (5, q(-4, 1)));
        assert_eq!(valuation(&7.into(), &q(14, 3)).unwrap(), (1, q(2, 3)));
        assert_eq!(valuation(&two, &q(3, 8)).unwrap(), (-3, q(3, 1)));
    }

    #[test]
    fn zero_is_rejected_or_infinite() {
        assert!(valuation(&2.into(), &q(0, 1)).is_err());
        assert_eq!(valuation_or_inf(&5.into(), &BigInt::zero()), Valuation::Infinite);
        assert!(Valuation::Infinite > Valuation::Finite(1 << 40));
    }
}
