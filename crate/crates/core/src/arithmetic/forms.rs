use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `r >= 1` with `s = -3r^2`, if there is one.
pub fn as_minus_3_square(s: &BigInt) -> Option<BigInt> {
    if !s.is_negative() {
        return None;
    }
    let (q, rem) = (-s).div_rem(&BigInt::from(3));
    if !rem.is_zero() {
        return None;
    }
    let r = q.sqrt();
    (&r * &r == q).then_some(r)
}

/// `k >= 1` with `s = -12k^4`, if there is one.
pub fn as_minus_12_fourth(s: &BigInt) -> Option<BigInt> {
    if !s.is_negative() {
        return None;
    }
    let (q, rem) = (-s).div_rem(&BigInt::from(12));
    if !rem.is_zero() {
        return None;
    }
    let k = q.nth_root(4);
    (&k * &k * &k * &k == q).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn examples() {
        assert_eq!(as_minus_3_square(&b(-972)), Some(b(18)));
        assert_eq!(as_minus_3_square(&b(-3)), Some(b(1)));
        assert_eq!(as_minus_3_square(&b(12)), None);
        assert_eq!(as_minus_3_square(&b(0)), None);
        assert_eq!(as_minus_12_fourth(&b(-7500)), Some(b(5)));
        assert_eq!(as_minus_12_fourth(&b(-12)), Some(b(1)));
        assert_eq!(as_minus_12_fourth(&b(-972)), Some(b(3)));
        assert_eq!(as_minus_12_fourth(&b(-24)), None);
    }
}
