use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rootno::arithmetic::*;

/// Jacobi symbol straight from the definition: factor `n` and multiply
/// Euler-criterion Legendre symbols.
fn jacobi_oracle(a: i64, n: u64) -> i8 {
    let mut m = n;
    let mut out = 1i8;
    let mut p = 3u64;
    while m > 1 {
        if p * p > m {
            p = m;
        }
        while m % p == 0 {
            m /= p;
            let r = a.rem_euclid(p as i64) as u64;
            let e = BigInt::from(r).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
            out *= if r == 0 {
                0
            } else if e.is_one() {
                1
            } else {
                -1
            };
        }
        p += 2;
    }
    out
}

fn fermat_probable_prime(p: &BigInt, rng: &mut ChaCha8Rng) -> bool {
    if p < &BigInt::from(4) {
        return p > &BigInt::one();
    }
    for _ in 0..8 {
        let a = rng.gen_bigint_range(&BigInt::from(2), &(p - 1u8));
        if a.gcd(p) != BigInt::one() {
            return false;
        }
        if !a.modpow(&(p - 1u8), p).is_one() {
            return false;
        }
    }
    true
}

#[test]
fn jacobi_matches_definition_on_small_inputs() {
    for n in (1u64..400).step_by(2) {
        for a in -60i64..60 {
            assert_eq!(
                jacobi(&BigInt::from(a), &BigInt::from(n)).unwrap(),
                jacobi_oracle(a, n),
                "({a}/{n})"
            );
        }
    }
}

#[test]
fn random_128_bit_factorizations_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_128);
    for _ in 0..1000 {
        let n = rng.gen_bigint(128);
        if n.is_zero() {
            continue;
        }
        let f = factorize(&n).unwrap();
        assert_eq!(f.product(), n);
        let mut prev = BigInt::zero();
        for (p, e) in &f.factors {
            assert!(*e >= 1);
            assert!(p > &prev, "factors must be sorted and distinct");
            assert!(fermat_probable_prime(p, &mut rng), "{p} is composite");
            prev = p.clone();
        }
    }
}

proptest! {
    #[test]
    fn jacobi_multiplicative_in_top(a in -10_000i64..10_000, b in -10_000i64..10_000, n in 0u64..50_000) {
        let n = BigInt::from(2 * n + 1);
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(
            jacobi(&(&a * &b), &n).unwrap(),
            jacobi(&a, &n).unwrap() * jacobi(&b, &n).unwrap()
        );
    }

    #[test]
    fn jacobi_multiplicative_in_bottom(a in -10_000i64..10_000, m in 0u64..3000, n in 0u64..3000) {
        let m = BigInt::from(2 * m + 1);
        let n = BigInt::from(2 * n + 1);
        let a = BigInt::from(a);
        prop_assert_eq!(
            jacobi(&a, &(&m * &n)).unwrap(),
            jacobi(&a, &m).unwrap() * jacobi(&a, &n).unwrap()
        );
    }

    #[test]
    fn modified_jacobi_reduces_to_jacobi_when_coprime(a in 1i64..5000, b in 1i64..5000, k in 1u32..4) {
        let delta = BigInt::from(2).pow(k);
        let (a, b) = (BigInt::from(2 * a + 1), BigInt::from(b));
        prop_assume!(a.gcd(&b).is_one());
        let odd = &b >> b.trailing_zeros().unwrap();
        prop_assert_eq!(
            modified_jacobi(&a, &b, &delta).unwrap(),
            jacobi(&a, &odd).unwrap()
        );
    }

    #[test]
    fn valuation_recovers_power_and_unit(pi in 0usize..6, k in 0u32..=50, u in 1i64..1_000_000, neg in any::<bool>()) {
        let p = BigInt::from([2, 3, 5, 7, 11, 13][pi]);
        prop_assume!(!(BigInt::from(u) % &p).is_zero());
        let u = if neg { -BigInt::from(u) } else { BigInt::from(u) };
        let x = p.pow(k) * &u;
        prop_assert_eq!(valuation_int(&p, &x).unwrap(), (k as u64, u.clone()));
        let q = BigRational::new(x, BigInt::from(1));
        prop_assert_eq!(valuation(&p, &q).unwrap(), (k as i64, BigRational::from_integer(u)));
    }

    #[test]
    fn minus_3_square_round_trip(r in 1i64..=10_000) {
        let s = BigInt::from(-3 * r * r);
        prop_assert_eq!(as_minus_3_square(&s), Some(BigInt::from(r)));
        prop_assert_eq!(as_minus_3_square(&(s - 3)), None);
    }

    #[test]
    fn minus_12_fourth_round_trip(k in 1i64..=1000) {
        let s = BigInt::from(-12) * BigInt::from(k).pow(4);
        prop_assert_eq!(as_minus_12_fourth(&s), Some(BigInt::from(k)));
        prop_assert_eq!(as_minus_12_fourth(&(s - 12)), None);
    }

    #[test]
    fn factorization_round_trips_on_i64(n in any::<i64>()) {
        prop_assume!(n != 0);
        let f = factorize(&BigInt::from(n)).unwrap();
        prop_assert_eq!(f.product().to_i64(), Some(n));
    }
}
