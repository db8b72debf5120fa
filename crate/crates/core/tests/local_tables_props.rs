mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootno::local_tables::{tables, w_star};
use rootno::Sign;

fn fuzz_class(pick: impl Fn(&mut ChaCha8Rng) -> u64, seed: u64, n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let p = pick(&mut rng);
        let (s, t) = fibre(&mut rng, p);
        w_star(&BigInt::from(p), &s, &t).unwrap_or_else(|e| panic!("p={p} s={s} t={t}: {e}"));
    }
}

#[test]
fn totality_two() {
    fuzz_class(|_| 2, 1, 20_000);
}

#[test]
fn totality_three() {
    fuzz_class(|_| 3, 2, 20_000);
}

#[test]
fn totality_large_primes() {
    fuzz_class(|r| ODD_PRIMES[r.gen_range(0..ODD_PRIMES.len())], 3, 20_000);
}

#[test]
fn ordinary_rows_never_overlap_with_otherwise_rows_of_a_different_block() {
    // An `otherwise` row that matches alongside an ordinary row is simply
    // shadowed; this checks the shadowing never hides a second ordinary row.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5000 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let (s, t) = fibre(&mut rng, p);
        let prof = rootno::local_tables::profile(&BigInt::from(p), &s, &t).unwrap();
        let ordinary = tables().matching_rows(&prof).into_iter().filter(|r| !r.2).count();
        assert!(ordinary <= 1, "p={p} s={s} t={t}");
    }
}

#[test]
fn trivial_off_the_factor_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5000 {
        let p = ODD_PRIMES[rng.gen_range(0..ODD_PRIMES.len())];
        let (s, t) = fibre(&mut rng, p);
        let pb = BigInt::from(p);
        if (&s % &pb) != b(0) && ((&t * &t - &s) % &pb) != b(0) {
            assert_eq!(w_star(&pb, &s, &t).unwrap(), Sign::Plus, "p={p} s={s} t={t}");
        }
    }
}

proptest! {
    #[test]
    fn scaling_invariance(pi in 0usize..12, seed in any::<u64>(), lam in -20i64..=20) {
        prop_assume!(lam != 0);
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        let p = primes[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t) = fibre(&mut rng, p);
        let l = b(lam);
        let pb = BigInt::from(p);
        let lhs = w_star(&pb, &(&s * l.pow(4)), &(&t * &l * &l)).unwrap();
        prop_assert_eq!(lhs, w_star(&pb, &s, &t).unwrap(), "p={} s={} t={} lambda={}", p, s, t, lam);
    }

    #[test]
    fn minus_3_square_at_split_primes(r in 1i64..2000, t in -5000i64..5000) {
        let s = b(-3 * r * r);
        let tts = b(t) * b(t) - &s;
        for (p, _) in rootno::arithmetic::factorize(&tts).unwrap().factors {
            if p > b(3) && (&s % &p) != b(0) {
                prop_assert_eq!(w_star(&p, &s, &b(t)).unwrap(), Sign::Plus, "p={}", p);
            }
        }
    }
}
