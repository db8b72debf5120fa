//! Primality testing and integer factorization.
//!
//! Trial division by the primes below 10^6, then Pollard-Brent rho. Cofactors
//! below 2^128 run in Montgomery form: a short rho pass, then ECM for the
//! balanced cases rho is slow on. Larger cofactors fall back to `BigInt` rho.
//! Primality is deterministic Miller-Rabin below 2^64 and BPSW above.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Sign and sorted prime-power factors of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Factor a nonzero integer.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero { what: "n" });
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut primes: Vec<BigInt> = Vec::new();
    let m = n.abs();
    if let Some(small) = m.to_u64() {
        let mut v = Vec::new();
        factor_u64(small, &mut v);
        primes.extend(v.into_iter().map(BigInt::from));
    } else {
        factor_big(m, &mut primes);
    }
    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

fn factor_u64(mut n: u64, out: &mut Vec<u64>) {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
    }
    if n > 1 {
        split_u128(n as u128, out);
    }
}

fn split_u128<T: TryFrom<u128>>(n: u128, out: &mut Vec<T>) {
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            out.push(T::try_from(m).ok().expect("factor fits the target width"));
            continue;
        }
        let d = find_factor_u128(m);
        stack.push(d);
        stack.push(m / d);
    }
}

fn factor_u128(mut n: u128, out: &mut Vec<BigInt>) {
    for (i, &p) in small_primes().iter().enumerate() {
        if i == 1000 && is_prime_u128(n) {
            break;
        }
        if let Ok(small) = u64::try_from(n) {
            let mut v = Vec::new();
            factor_u64(small, &mut v);
            out.extend(v.into_iter().map(BigInt::from));
            return;
        }
        let p = p as u128;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            out.push(BigInt::from(p));
            n /= p;
        }
    }
    let mut v: Vec<u128> = Vec::new();
    split_u128(n, &mut v);
    out.extend(v.into_iter().map(BigInt::from));
}

fn factor_big(mut n: BigInt, out: &mut Vec<BigInt>) {
    for &p in small_primes() {
        if let Some(small) = n.to_u128() {
            factor_u128(small, out);
            return;
        }
        if let Some(small) = n.to_u64() {
            let mut v = Vec::new();
            factor_u64(small, &mut v);
            out.extend(v.into_iter().map(BigInt::from));
            return;
        }
        let pb = BigInt::from(p);
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            out.push(pb.clone());
            n = q;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u128() {
            if is_prime_u128(small) {
                out.push(m);
            } else {
                let d = find_factor_u128(small);
                stack.push(BigInt::from(d));
                stack.push(BigInt::from(small / d));
            }
            continue;
        }
        if is_prime(&m) {
            out.push(m);
            continue;
        }
        let d = rho_big(&m);
        stack.push(m.clone() / &d);
        stack.push(d);
    }
}

/// Primality test: deterministic below 2^64, BPSW above.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    match n.to_u64() {
        Some(x) => is_prime_u64(x),
        None => {
            for &p in &small_primes()[..200] {
                if (n % p).is_zero() {
                    return false;
                }
            }
            bpsw(n)
        }
    }
}

fn is_prime_u128(n: u128) -> bool {
    match u64::try_from(n) {
        Ok(x) => is_prime_u64(x),
        Err(_) => is_prime(&BigInt::from(n)),
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Baillie-PSW: strong base-2 Miller-Rabin plus a strong Lucas test with
/// Selfridge parameters. Expects an odd `n` without tiny factors.
fn bpsw(n: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    let mut x = BigInt::from(2).modpow(&d, n);
    if !(x.is_one() || x == nm1) {
        let mut ok = false;
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                ok = true;
                break;
            }
        }
        if !ok {
            return false;
        }
    }
    if is_square(n) {
        return false;
    }
    let mut dd: i64 = 5;
    loop {
        let j = super::symbols::jacobi_unchecked(&BigInt::from(dd), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(dd.abs()) != *n {
            return false;
        }
        dd = if dd > 0 { -(dd + 2) } else { -dd + 2 };
    }
    let p = BigInt::one();
    let q = BigInt::from((1 - dd) / 4);
    strong_lucas(n, &p, &q, &BigInt::from(dd))
}

fn strong_lucas(n: &BigInt, p: &BigInt, q: &BigInt, d: &BigInt) -> bool {
    let np1: BigInt = n + 1u8;
    let s = np1.trailing_zeros().unwrap();
    let k = &np1 >> s;
    let half = |x: BigInt| -> BigInt {
        let x = if x.is_odd() { x + n } else { x };
        (x >> 1u8).mod_floor(n)
    };
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = k.bits();
    for i in (0..bits).rev() {
        // double
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - (&qk << 1u8)).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let nu = half(p * &u + &v);
            let nv = half(d * &u + p * &v);
            u = nu;
            v = nv;
            qk = (&qk * q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - (&qk << 1u8)).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Montgomery arithmetic modulo an odd `n < 2^128`.
#[derive(Clone, Copy)]
struct Mont {
    n: u128,
    ninv: u128,
    r2: u128,
}

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = ((a >> 64) as u64 as u128, a as u64 as u128);
    let (b1, b0) = ((b >> 64) as u64 as u128, b as u64 as u128);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 as u64 as u128) + (p10 as u64 as u128);
    let lo = (p00 as u64 as u128) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

impl Mont {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1 && n > 1);
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let ninv = inv.wrapping_neg();
        // R mod n then R^2 mod n by doubling.
        let r1 = (u128::MAX % n + 1) % n;
        let mut r2 = r1;
        for _ in 0..128 {
            r2 = add_mod(r2, r2, n);
        }
        Mont { n, ninv, r2 }
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.ninv);
        let (mh, ml) = mul_wide(m, self.n);
        let (_, carry_lo) = lo.overflowing_add(ml);
        let (t, c1) = hi.overflowing_add(mh);
        let (t, c2) = t.overflowing_add(carry_lo as u128);
        if c1 || c2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }
}

fn add_mod(a: u128, b: u128, n: u128) -> u128 {
    let (s, o) = a.overflowing_add(b);
    if o || s >= n {
        s.wrapping_sub(n)
    } else {
        s
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// A nontrivial divisor of a composite `n < 2^128`.
fn find_factor_u128(n: u128) -> u128 {
    if n % 2 == 0 {
        return 2;
    }
    for k in 2..=4u32 {
        let r = BigInt::from(n).nth_root(k).to_u128().unwrap();
        if r.pow(k) == n {
            return r;
        }
    }
    if let Some(d) = rho_u128(n, 1 << 14) {
        return d;
    }
    const SCHEDULE: [(u64, u64); 4] = [(2_000, 25), (11_000, 90), (50_000, 300), (250_000, 700)];
    let mut sigma = 6u64;
    for (b1, curves) in SCHEDULE {
        for _ in 0..curves {
            if let Some(d) = ecm_curve(n, b1, 50 * b1, sigma) {
                return d;
            }
            sigma += 1;
        }
    }
    rho_u128(n, u64::MAX).expect("rho on a composite")
}

/// Pollard-Brent rho with at most about `limit` iterations per constant.
fn rho_u128(n: u128, limit: u64) -> Option<u128> {
    let mont = Mont::new(n);
    for c in 1u128..=8 {
        let cm = mont.to_mont(c);
        let f = |x: u128| add_mod(mont.mul(x, x), cm, n);
        let mut y = mont.to_mont(2);
        let mut x;
        let mut q = mont.to_mont(1);
        let mut g = 1u128;
        let mut r = 1u64;
        let mut ys = y;
        const M: u64 = 128;
        while g == 1 {
            if r > limit {
                break;
            }
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    let diff = if x > y { x - y } else { y - x };
                    q = mont.mul(q, diff);
                }
                g = gcd_u128(q, n);
                k += M;
            }
            r *= 2;
            if g == 1 {
                continue;
            }
            if g == n {
                loop {
                    ys = f(ys);
                    let diff = if x > ys { x - ys } else { ys - x };
                    g = gcd_u128(diff, n);
                    if g > 1 {
                        break;
                    }
                }
                if g == n {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
        if g == 1 {
            return None;
        }
    }
    None
}

fn sub_mod(a: u128, b: u128, n: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        a.wrapping_sub(b).wrapping_add(n)
    }
}

/// Projective x-only point on a Montgomery curve.
#[derive(Clone, Copy)]
struct XZ {
    x: u128,
    z: u128,
}

struct Curve<'a> {
    m: &'a Mont,
    // (A + 2) / 4 as the fraction a24 / c24.
    a24: u128,
    c24: u128,
}

impl Curve<'_> {
    fn dbl(&self, p: XZ) -> XZ {
        let n = self.m.n;
        let s = add_mod(p.x, p.z, n);
        let d = sub_mod(p.x, p.z, n);
        let s2 = self.m.mul(s, s);
        let d2 = self.m.mul(d, d);
        let t = sub_mod(s2, d2, n);
        let x = self.m.mul(self.m.mul(self.c24, s2), d2);
        let z = self.m.mul(t, add_mod(self.m.mul(self.c24, d2), self.m.mul(self.a24, t), n));
        XZ { x, z }
    }

    fn add(&self, p: XZ, q: XZ, diff: XZ) -> XZ {
        let n = self.m.n;
        let u = self.m.mul(sub_mod(p.x, p.z, n), add_mod(q.x, q.z, n));
        let v = self.m.mul(add_mod(p.x, p.z, n), sub_mod(q.x, q.z, n));
        let plus = add_mod(u, v, n);
        let minus = sub_mod(u, v, n);
        XZ {
            x: self.m.mul(diff.z, self.m.mul(plus, plus)),
            z: self.m.mul(diff.x, self.m.mul(minus, minus)),
        }
    }

    fn ladder(&self, p: XZ, k: u64) -> XZ {
        if k == 1 {
            return p;
        }
        let mut r0 = p;
        let mut r1 = self.dbl(p);
        for i in (0..63 - k.leading_zeros()).rev() {
            if (k >> i) & 1 == 1 {
                r0 = self.add(r0, r1, p);
                r1 = self.dbl(r1);
            } else {
                r1 = self.add(r0, r1, p);
                r0 = self.dbl(r0);
            }
        }
        r0
    }
}

/// One ECM curve (Suyama parametrization), stage 1 to `b1` and a
/// baby-step giant-step stage 2 to `b2`.
fn ecm_curve(n: u128, b1: u64, b2: u64, sigma: u64) -> Option<u128> {
    let m = Mont::new(n);
    let sg = m.to_mont(sigma as u128);
    let u = sub_mod(m.mul(sg, sg), m.to_mont(5), n);
    let v = add_mod(add_mod(sg, sg, n), add_mod(sg, sg, n), n);
    let u3 = m.mul(m.mul(u, u), u);
    let v3 = m.mul(m.mul(v, v), v);
    let vmu = sub_mod(v, u, n);
    let three_u = add_mod(add_mod(u, u, n), u, n);
    let a24 = m.mul(m.mul(m.mul(vmu, vmu), vmu), add_mod(three_u, v, n));
    let c24 = m.mul(m.mul(m.to_mont(16), u3), v);
    let curve = Curve { m: &m, a24, c24 };
    let mut q = XZ { x: u3, z: v3 };
    for &p in small_primes() {
        let p = p as u64;
        if p > b1 {
            break;
        }
        let mut pe = p;
        while pe <= b1 / p {
            pe *= p;
        }
        q = curve.ladder(q, pe);
    }
    let g = gcd_u128(m.redc(0, q.z), n);
    if g == n {
        return None;
    }
    if g > 1 {
        return Some(g);
    }
    const D: u64 = 210;
    let q2 = curve.dbl(q);
    let mut baby: Vec<XZ> = Vec::new();
    let (mut prev, mut cur) = (q, curve.add(q2, q, q));
    let mut odd = vec![q];
    let mut j = 3;
    while j < D / 2 {
        odd.push(cur);
        let next = curve.add(cur, q2, prev);
        prev = cur;
        cur = next;
        j += 2;
    }
    for (i, pt) in odd.iter().enumerate() {
        let j = 2 * i as u64 + 1;
        if num_integer::gcd(j, D) == 1 {
            baby.push(*pt);
        }
    }
    let dq = curve.ladder(q, D);
    let k0 = (b1 / D).max(1);
    let mut t_prev = curve.ladder(q, (k0 - 1).max(1) * D);
    let mut t = curve.ladder(q, k0 * D);
    if k0 == 1 {
        t_prev = XZ { x: m.to_mont(1), z: 0 };
    }
    let mut acc = m.to_mont(1);
    let mut k = k0;
    while k * D <= b2 + D {
        for s in &baby {
            let cross = sub_mod(m.mul(t.x, s.z), m.mul(s.x, t.z), n);
            acc = m.mul(acc, cross);
        }
        let next = if k == k0 && k0 == 1 { curve.dbl(t) } else { curve.add(t, dq, t_prev) };
        t_prev = t;
        t = next;
        k += 1;
    }
    let g = gcd_u128(m.redc(0, acc), n);
    (g > 1 && g < n).then_some(g)
}

fn rho_big(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return r;
    }
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r = 1u64;
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64) -> Vec<(i64, u32)> {
        factorize(&BigInt::from(n))
            .unwrap()
            .factors
            .into_iter()
            .map(|(p, e)| (p.to_i64().unwrap(), e))
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(f(1872), vec![(2, 4), (3, 2), (13, 1)]);
        assert_eq!(f(29008), vec![(2, 4), (7, 2), (37, 1)]);
        let m1 = factorize(&BigInt::from(-1)).unwrap();
        assert_eq!(m1.sign, -1);
        assert!(m1.factors.is_empty());
        assert!(factorize(&BigInt::zero()).is_err());
    }

    #[test]
    fn semiprimes_across_paths() {
        // Two 31-bit primes, two 61-bit primes, and a product above 2^128.
        let cases = [
            "4611686014132420609",
            "5316911983139663487003542222693990401",
            "2305843009213693951",
        ];
        for c in cases {
            let n: BigInt = c.parse().unwrap();
            let fz = factorize(&n).unwrap();
            assert_eq!(fz.product(), n);
            for (p, _) in &fz.factors {
                assert!(is_prime(p));
            }
        }
        let p: BigInt = "170141183460469231731687303715884105727".parse().unwrap();
        assert!(is_prime(&p));
        let n = &p * BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let fz = factorize(&n).unwrap();
        assert_eq!(fz.factors.len(), 3);
        assert_eq!(fz.product(), n);
    }

    #[test]
    fn primality_small_range_matches_sieve() {
        let sieve = small_primes();
        let mut idx = 0;
        for n in 0u64..20_000 {
            let expect = idx < sieve.len() && sieve[idx] as u64 == n;
            if expect {
                idx += 1;
            }
            assert_eq!(is_prime_u64(n), expect, "n = {n}");
        }
        // Strong pseudoprimes to several bases.
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        assert!(!is_prime(&"318665857834031151167461".parse().unwrap()));
    }
}
