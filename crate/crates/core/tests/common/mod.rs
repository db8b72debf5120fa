#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;

pub const ODD_PRIMES: [u64; 10] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn unit<R: Rng>(rng: &mut R, p: u64, bits: u32) -> BigInt {
    loop {
        let u: i64 = rng.gen_range(1..(1i64 << bits));
        if u as u64 % p != 0 {
            return if rng.gen() { b(u) } else { b(-u) };
        }
    }
}

/// A nonsingular `(s, t)` with interesting valuations at `p`. A third of the
/// draws put `t^2 - s` deep in `p` so the `vs = 2 vt` sub-tables get exercised.
pub fn fibre<R: Rng>(rng: &mut R, p: u64) -> (BigInt, BigInt) {
    let pb = BigInt::from(p);
    loop {
        let (s, t) = match rng.gen_range(0..3) {
            0 => {
                let s = pb.pow(rng.gen_range(0..12)) * unit(rng, p, 20);
                let t = if rng.gen_ratio(1, 20) {
                    b(0)
                } else {
                    pb.pow(rng.gen_range(0..8)) * unit(rng, p, 20)
                };
                (s, t)
            }
            1 => {
                let k = rng.gen_range(0..6);
                let t = pb.pow(k) * unit(rng, p, 16);
                let s = &t * &t - pb.pow(2 * k + rng.gen_range(0..10)) * unit(rng, p, 12);
                (s, t)
            }
            _ => {
                let s: i64 = rng.gen_range(-5000..5000);
                let t: i64 = rng.gen_range(-5000..5000);
                (b(s), b(t))
            }
        };
        if s != b(0) && &t * &t != s {
            return (s, t);
        }
    }
}
