//! Enumeration-side evidence: probe sets, a constancy falsifier, and the
//! discrepancy ledger built from the worked example families.
//!
//! The decider in [`crate::constancy`] is the exact procedure. Everything
//! here is evidence: the falsifier may miss a witness, and the ledger only
//! records what the registered cross-checks observed.

mod examples;
mod ledger;
mod probe;

#[cfg(feature = "classical-oracle")]
pub mod classical;

pub use examples::run_paper_examples;
pub use ledger::{DiscrepancyLedger, FibreRecord, LedgerRecord, RecordKind};
pub use probe::{probe_set, ProbeBall, ProbeSet, MAX_PROBE_PRIME};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

use crate::arithmetic::factorize;
use crate::constancy::Witness;
use crate::error::{Error, Result};
use crate::families::Progression;
use crate::global_root::FibreEvaluator;
use crate::local_tables::{tables, RowHit, TableSet};
use crate::sign::Sign;
use probe::{centered, crt};

/// Cap on CRT-lifted fibres tried by [`falsify_constancy`].
pub const MAX_LIFTS: u64 = 512;

/// Lifted fibres with `|t|` above this many bits are skipped: `t^2 - s`
/// would be too slow to factor.
pub const MAX_LIFT_BITS: u64 = 48;

/// `0, 1, -1, 2, -2, ...` up to `|u| <= n`.
pub fn scan_order(n: u64) -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero()).chain((1..=n).flat_map(|k| [BigInt::from(k), -BigInt::from(k)]))
}

struct Hunt<'a> {
    ev: FibreEvaluator<'a>,
    prog: Progression,
    first: Option<(BigInt, BigInt, Sign)>,
    tried: BTreeSet<BigInt>,
}

impl Hunt<'_> {
    fn try_u(&mut self, u: &BigInt) -> Result<Option<Witness>> {
        if !self.tried.insert(u.clone()) {
            return Ok(None);
        }
        let t = self.prog.at(u);
        let w = match self.ev.sign(&t) {
            Ok(w) => w,
            Err(Error::SingularFibre { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        match &self.first {
            None => {
                self.first = Some((u.clone(), t, w));
                Ok(None)
            }
            Some((u1, t1, w1)) if *w1 != w => Ok(Some(Witness {
                u1: u1.clone(),
                t1: t1.clone(),
                w1: *w1,
                u2: u.clone(),
                t2: t,
                w2: w,
            })),
            Some(_) => Ok(None),
        }
    }
}

/// Looks for two fibres of `F_s(a u + b)` with opposite root numbers.
///
/// Order: `|u| <= budget` as `0, 1, -1, ...`; then every probe `u` at each
/// prime of `6 s`; then CRT lifts that pin one probe ball at `p` while
/// holding the other primes of `6 s` at the first fibre found. Absence of a
/// witness is evidence of constancy, not proof.
pub fn falsify_constancy(s: &BigInt, a: &BigInt, b: &BigInt, budget: u64) -> Result<Option<Witness>> {
    if a.is_zero() {
        return Err(Error::Zero { what: "a" });
    }
    let mut h = Hunt {
        ev: FibreEvaluator::new(s)?,
        prog: Progression { a: a.clone(), b: b.clone() },
        first: None,
        tried: BTreeSet::new(),
    };
    for u in scan_order(budget) {
        if let Some(w) = h.try_u(&u)? {
            return Ok(Some(w));
        }
    }
    let mut primes: Vec<BigInt> = factorize(&(s * 6))?.primes().cloned().collect();
    primes.sort();
    let mut sets = Vec::new();
    for p in &primes {
        match probe_set(p, s, a, b) {
            Ok(ps) => sets.push(ps),
            Err(Error::Unavailable(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    for ps in &sets {
        for u in ps.us() {
            if let Some(w) = h.try_u(&u)? {
                return Ok(Some(w));
            }
        }
    }
    let Some((u0, _, _)) = h.first.clone() else { return Ok(None) };
    // Hold every other prime in the ball that contains u0; those balls are
    // usually shallow, which keeps the lifted fibres small enough to factor.
    let home: Vec<BigInt> = sets
        .iter()
        .map(|q| {
            let ball = q.balls.iter().find(|bl| (&u0 - &bl.c) % q.p.pow(bl.depth) == BigInt::zero());
            q.p.pow(ball.map_or(q.k, |bl| bl.depth))
        })
        .collect();
    let mut left = budget.clamp(16, MAX_LIFTS);
    for (i, ps) in sets.iter().enumerate() {
        let others: BigInt = home.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m).product();
        for ball in &ps.balls {
            let mp = ps.p.pow(ball.depth);
            let m = &mp * &others;
            let base = if others.is_one() { ball.c.clone() } else { crt(&ball.c, &mp, &u0, &others) };
            let base = centered(&base, &m);
            for k in scan_order(1) {
                if left == 0 {
                    return Ok(None);
                }
                left -= 1;
                let u = &base + &k * &m;
                if h.prog.at(&u).bits() > MAX_LIFT_BITS {
                    continue;
                }
                if let Some(w) = h.try_u(&u)? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// The distinct values of `w_p*` over the probe set, each with the first
/// probe and row that produced it.
pub fn local_values(p: &BigInt, s: &BigInt, a: &BigInt, b: &BigInt) -> Result<Vec<(Sign, BigInt, RowHit)>> {
    local_values_with(tables(), p, s, a, b)
}

pub fn local_values_with(
    tables: &TableSet,
    p: &BigInt,
    s: &BigInt,
    a: &BigInt,
    b: &BigInt,
) -> Result<Vec<(Sign, BigInt, RowHit)>> {
    let ps = probe_set(p, s, a, b)?;
    let prog = Progression { a: a.clone(), b: b.clone() };
    let mut out: Vec<(Sign, BigInt, RowHit)> = Vec::new();
    for u in ps.us() {
        let hit = crate::local_tables::w_star_with(tables, p, s, &prog.at(&u))?;
        if out.iter().all(|(w, _, _)| *w != hit.sign) {
            out.push((hit.sign, u, hit));
        }
    }
    out.sort_by_key(|(w, _, _)| std::cmp::Reverse(*w));
    Ok(out)
}
