//! Probe sets: finitely many `u` that between them realise every value
//! `w_p*(F_s(a u + b))` can take.
//!
//! The `u`-line is split into p-adic balls `c + p^j Z`. A ball is settled
//! once `nu_p(t)`, `nu_p(t^2 - s)` and the unit parts modulo `p^e` are the
//! same for every `u` in it, `e` being the precision the table guards read
//! (4 at p = 2, 2 at p = 3, 1 otherwise). On a settled ball `w_p*` is
//! constant, so one representative suffices. Balls still unsettled at depth
//! `K = nu_p(s) + 8` are kept as truncated representatives; those are the
//! only places where coverage is heuristic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetic::{is_prime, split_unchecked};
use crate::error::{Error, Result};
use crate::families::{is_singular, Progression};

/// Primes above this are refused: refinement enumerates `p` children.
pub const MAX_PROBE_PRIME: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeBall {
    /// A nonsingular representative of `c + p^depth Z`.
    #[serde(with = "crate::dec::big")]
    pub u: BigInt,
    #[serde(with = "crate::dec::big")]
    pub c: BigInt,
    pub depth: u32,
    pub settled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSet {
    #[serde(with = "crate::dec::big")]
    pub p: BigInt,
    pub k: u32,
    pub balls: Vec<ProbeBall>,
    /// One `u` per target `nu_p(t)` in `nu_p(a) ..= nu_p(a) + K`, present
    /// only when `nu_p(a) <= nu_p(b)`.
    #[serde(with = "crate::dec::big_vec")]
    pub deep: Vec<BigInt>,
}

impl ProbeSet {
    /// All probe values, balls first, without repeats.
    pub fn us(&self) -> Vec<BigInt> {
        let mut seen = std::collections::HashSet::new();
        self.balls
            .iter()
            .map(|b| &b.u)
            .chain(&self.deep)
            .filter(|u| seen.insert((*u).clone()))
            .cloned()
            .collect()
    }

    /// True when every ball settled, i.e. the probe set is exhaustive.
    pub fn exhaustive(&self) -> bool {
        self.balls.iter().all(|b| b.settled)
    }
}

fn precision(p: &BigInt) -> i64 {
    match p.to_u64() {
        Some(2) => 4,
        Some(3) => 2,
        _ => 1,
    }
}

fn nu(p: &BigInt, x: &BigInt) -> Option<i64> {
    (!x.is_zero()).then(|| split_unchecked(p, x).0 as i64)
}

/// Whether `a u + b` and `(a u + b)^2 - s` are settled on `c + p^j Z`.
fn settled(p: &BigInt, s: &BigInt, prog: &Progression, va: i64, e: i64, c: &BigInt, j: i64) -> bool {
    let t = prog.at(c);
    let Some(vt) = nu(p, &t) else { return false };
    if vt + e > va + j {
        return false;
    }
    let Some(vg) = nu(p, &(&t * &t - s)) else { return false };
    let lin = nu(p, &(&t * &prog.a * 2)).unwrap() + j;
    vg + e <= lin.min(2 * va + 2 * j)
}

/// A nonsingular point of `c + m Z`, searching `c, c + m, c - m, ...`.
fn nonsingular_in(s: &BigInt, prog: &Progression, c: &BigInt, m: &BigInt) -> BigInt {
    let mut k = BigInt::zero();
    loop {
        for u in [c + &k * m, c - &k * m] {
            if !is_singular(s, &prog.at(&u)) {
                return u;
            }
        }
        k += 1;
    }
}

/// The probe set of `F_s(a u + b)` at `p`.
pub fn probe_set(p: &BigInt, s: &BigInt, a: &BigInt, b: &BigInt) -> Result<ProbeSet> {
    if s.is_zero() {
        return Err(Error::Zero { what: "s" });
    }
    if a.is_zero() {
        return Err(Error::Zero { what: "a" });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if p.to_u64().is_none_or(|x| x > MAX_PROBE_PRIME) {
        return Err(Error::Unavailable(format!("probe sets need p <= {MAX_PROBE_PRIME}, got {p}")));
    }
    let prog = Progression { a: a.clone(), b: b.clone() };
    let vs = split_unchecked(p, s).0 as i64;
    let va = split_unchecked(p, a).0 as i64;
    let k = (vs + 8) as u32;
    let e = precision(p);
    let pp = p.to_u64().unwrap();

    let mut balls = Vec::new();
    // Depth-first over (c, j); children of c at depth j are c + i p^j.
    let mut stack = vec![(BigInt::zero(), 0u32, BigInt::one())];
    while let Some((c, j, pj)) = stack.pop() {
        let done = settled(p, s, &prog, va, e, &c, j as i64);
        if done || j >= k {
            let u = nonsingular_in(s, &prog, &c, &pj);
            balls.push(ProbeBall { u, c, depth: j, settled: done });
            continue;
        }
        let next = &pj * p;
        for i in (0..pp).rev() {
            stack.push((&c + &pj * i, j + 1, next.clone()));
        }
    }

    let mut deep = Vec::new();
    let (vb, _) = if b.is_zero() { (i64::MAX as u64, BigInt::zero()) } else { split_unchecked(p, b) };
    if va <= vb as i64 {
        let (_, a1) = split_unchecked(p, a);
        let b1 = b / p.pow(va as u32);
        for m in va..=va + k as i64 {
            let pm = p.pow((m - va) as u32);
            // a1 u + b1 = 0 mod p^(m - va), then nudge to make nu(t) exactly m.
            let inv = a1.extended_gcd(&pm).x;
            let u0 = (-&b1 * inv).mod_floor(&pm);
            let u = [u0.clone(), &u0 + &pm]
                .into_iter()
                .find(|u| nu(p, &prog.at(u)) == Some(m))
                .unwrap_or(u0);
            let step = &pm * p;
            let u = nonsingular_in(s, &prog, &u, &step);
            if nu(p, &prog.at(&u)) == Some(m) {
                deep.push(u);
            }
        }
    }
    Ok(ProbeSet { p: p.clone(), k, balls, deep })
}

/// `u` reduced to the smallest absolute representative of its class mod `m`.
pub(crate) fn centered(u: &BigInt, m: &BigInt) -> BigInt {
    let r = u.mod_floor(m);
    if (&r * 2) > *m {
        r - m
    } else {
        r
    }
}

/// `x = r1 mod m1`, `x = r2 mod m2` for coprime moduli.
pub(crate) fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    let g = m1.extended_gcd(m2);
    debug_assert!(g.gcd.abs().is_one());
    let m = m1 * m2;
    (r1 + m1 * ((r2 - r1) * g.x)).mod_floor(&m)
}
