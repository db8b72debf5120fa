//! Generic rank, forced local signs for `s = -12 k^4`, and the rank-jump
//! prediction that follows under the parity conjecture.
//!
//! The forced-sign lists are implemented as stated. Where a stated list
//! disagrees with the tables the audit records it; nothing here is patched
//! to agree with enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::arithmetic::{as_minus_12_fourth, factorize, is_prime, legendre_unchecked, split_unchecked};
use crate::constancy::{check_f, Verdict};
use crate::error::{Error, Result};
use crate::sign::Sign;

/// 1 when `s = -12 k^4`, else 0.
pub fn generic_rank(s: &BigInt) -> u32 {
    u32::from(as_minus_12_fourth(s).is_some())
}

/// A local sign that holds on the whole progression, with the item that
/// forces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Forced {
    pub sign: Option<Sign>,
    pub item: Option<String>,
}

impl Forced {
    fn yes(sign: Sign, item: impl Into<String>) -> Self {
        Forced { sign: Some(sign), item: Some(item.into()) }
    }

    fn no() -> Self {
        Forced { sign: None, item: None }
    }

    pub fn is_forced(&self) -> bool {
        self.sign.is_some()
    }
}

impl fmt::Display for Forced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.sign, &self.item) {
            (Some(s), Some(i)) => write!(f, "forced {s} ({i})"),
            _ => f.write_str("not forced"),
        }
    }
}

fn m(x: &BigInt, k: i64) -> i64 {
    x.mod_floor(&BigInt::from(k)).to_i64().unwrap()
}

struct Vals {
    va: i64,
    vb: i64,
    vs: i64,
    b_unit: BigInt,
    s_unit: BigInt,
}

fn vals(p: &BigInt, s: &BigInt, a: &BigInt, b: &BigInt) -> Vals {
    let (vs, s_unit) = split_unchecked(p, s);
    let (vb, b_unit) = split_unchecked(p, b);
    let va = split_unchecked(p, a).0;
    Vals { va: va as i64, vb: vb as i64, vs: vs as i64, b_unit, s_unit }
}

fn forced_p5(p: &BigInt, v: &Vals) -> Forced {
    use Sign::{Minus, Plus};
    let p1 = m(p, 4) == 1;
    if v.vb < v.va && v.vs <= 2 * v.vb {
        return Forced::yes(Plus, "F5.1");
    }
    if v.vb < v.va && v.vs > 2 * v.vb {
        if v.vb % 2 == 1 {
            return Forced::yes(if p1 { Plus } else { Minus }, "F5.2c");
        }
        return match (legendre_unchecked(&v.b_unit, p), p1) {
            (-1, true) => Forced::yes(Plus, "F5.2a"),
            (-1, false) => Forced::yes(Minus, "F5.2a"),
            (_, true) => Forced::yes(Minus, "F5.2b"),
            (_, false) => Forced::yes(Plus, "F5.2b"),
        };
    }
    // Item 3 is read with nu(a) in place of nu(b): `nu(s)/2 <= nu(a) <= nu(b)`.
    if v.va <= v.vb && v.vs <= 2 * v.va {
        return Forced::yes(Plus, "F5.3");
    }
    Forced::no()
}

/// `d = vs - 2 vb - base` equal to `base + 4 l` for some `l >= 1`.
fn four_l(d: i64, base: i64) -> bool {
    d > base && (d - base) % 4 == 0
}

fn forced_p3(v: &Vals) -> Forced {
    use Sign::{Minus, Plus};
    let d = v.vs - 2 * v.vb;
    let b3 = m(&v.b_unit, 3);
    if v.vb < v.va {
        if d <= 3 {
            return Forced::yes(Plus, "F3.1a");
        }
        if four_l(d, 3) && b3 == 2 {
            return Forced::yes(Plus, "F3.1b");
        }
        if four_l(d, 1) {
            return Forced::yes(Minus, "F3.3");
        }
        if four_l(d, 3) && b3 == 1 {
            return Forced::yes(Minus, "F3.4");
        }
    } else if v.vs <= 2 * v.va + 3 {
        return Forced::yes(Plus, "F3.2");
    }
    Forced::no()
}

/// `(b_2^2 - s_2)_2 mod 4`, the unit part taken after subtracting.
fn b2_minus_s2(v: &Vals) -> i64 {
    let x = &v.b_unit * &v.b_unit - &v.s_unit;
    if x.is_zero() {
        return 0;
    }
    m(&split_unchecked(&BigInt::from(2), &x).1, 4)
}

fn forced_p2(v: &Vals) -> Forced {
    use Sign::{Minus, Plus};
    let (va, vb) = (v.va, v.vb);
    let d = v.vs - 2 * vb;
    let (b4, b8) = (m(&v.b_unit, 4), m(&v.b_unit, 8));
    let eq0_plus = || b4 == 1 || (b8 == 3 && b2_minus_s2(v) == 3);
    let eq0_minus = || (b8 == 3 && b2_minus_s2(v) == 1) || b8 == 7;
    // `2 + 4 l` is read as `d > 6` so that it does not overlap the separate `d = 6` items.
    let six_plus = |d: i64| four_l(d, 6);
    if vb < va - 2 {
        let hit = if d == -4 {
            Some((Plus, "F2.1a"))
        } else if d == 0 && eq0_plus() {
            Some((Plus, "F2.1b"))
        } else if d == 2 && [1, 3, 7].contains(&b8) {
            Some((Plus, "F2.1c"))
        } else if four_l(d, 0) && b4 == 3 {
            Some((Plus, "F2.1d"))
        } else if d == 6 && b4 == 3 {
            Some((Plus, "F2.1e"))
        } else if six_plus(d) && b8 == 7 {
            Some((Plus, "F2.1f"))
        } else if d < -4 {
            Some((Minus, "F2.5a"))
        } else if d == -2 {
            Some((Minus, "F2.5b"))
        } else if d == 0 && eq0_minus() {
            Some((Minus, "F2.5c"))
        } else if d == 2 && b8 == 5 {
            Some((Minus, "F2.5d"))
        } else if four_l(d, 0) && b4 == 1 {
            Some((Minus, "F2.5e"))
        } else if d == 6 && b4 == 1 {
            Some((Minus, "F2.5f"))
        } else if six_plus(d) && [1, 3, 5].contains(&b8) {
            Some((Minus, "F2.5g"))
        } else {
            None
        };
        return hit.map_or_else(Forced::no, |(s, i)| Forced::yes(s, i));
    }
    if vb == va - 2 {
        let hit = if d <= -4 {
            Some((Plus, "F2.2a"))
        } else if d == 0 && eq0_plus() {
            Some((Plus, "F2.2b"))
        } else if d == 2 && b4 == 3 {
            Some((Plus, "F2.2c"))
        } else if four_l(d, 0) && b4 == 3 {
            Some((Plus, "F2.2d"))
        } else if d == 6 && b4 == 3 {
            Some((Plus, "F2.2e"))
        } else if d == -2 {
            Some((Minus, "F2.6a"))
        } else if d == 0 && eq0_minus() {
            Some((Minus, "F2.6b"))
        } else if four_l(d, 0) && b4 == 1 {
            Some((Minus, "F2.6c"))
        } else if d == 6 && b4 == 1 {
            Some((Minus, "F2.6d"))
        } else if six_plus(d) && b4 == 1 {
            Some((Minus, "F2.6e"))
        } else {
            None
        };
        return hit.map_or_else(Forced::no, |(s, i)| Forced::yes(s, i));
    }
    if vb == va - 1 {
        if d <= -4 {
            return Forced::yes(Plus, "F2.3");
        }
        if d == -2 {
            return Forced::yes(Minus, "F2.7");
        }
        return Forced::no();
    }
    if va <= vb && v.vs <= 2 * va - 4 {
        return Forced::yes(Plus, "F2.4");
    }
    Forced::no()
}

fn require_12k4(s: &BigInt) -> Result<BigInt> {
    as_minus_12_fourth(s).ok_or_else(|| Error::NotMinus12Fourth(s.clone()))
}

fn nonzero_ab(a: &BigInt, b: &BigInt) -> Result<()> {
    if a.is_zero() {
        return Err(Error::Zero { what: "a" });
    }
    if b.is_zero() {
        return Err(Error::Zero { what: "b" });
    }
    Ok(())
}

/// Whether `w_p*(a u + b)` is forced to a single value, for `s = -12 k^4`.
pub fn forced_sign(p: &BigInt, s: &BigInt, a: &BigInt, b: &BigInt) -> Result<Forced> {
    require_12k4(s)?;
    nonzero_ab(a, b)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let v = vals(p, s, a, b);
    Ok(match p.to_u64() {
        Some(2) => forced_p2(&v),
        Some(3) => forced_p3(&v),
        _ if v.vs == 0 => Forced::yes(Sign::Plus, "F.trivial"),
        _ => forced_p5(p, &v),
    })
}

/// The reduced lists for `s = -12 q^4` with `q >= 5` prime, as a map over
/// the primes 2, 3, q.
pub fn forced_sign_kq(s: &BigInt, a: &BigInt, b: &BigInt) -> Result<Vec<(BigInt, Forced)>> {
    let q = require_12k4(s)?;
    if q < BigInt::from(5) || !is_prime(&q) {
        return Err(Error::NotMinus12PrimeFourth(s.clone()));
    }
    nonzero_ab(a, b)?;
    use Sign::{Minus, Plus};
    let two = BigInt::from(2);
    let v2 = vals(&two, s, a, b);
    let vq = vals(&q, s, a, b);

    let (va, vb) = (vq.va, vq.vb);
    let q1 = m(&q, 4) == 1;
    let leg = legendre_unchecked(b, &q);
    // Item (a) is read as `2 <= nu_q(a) <= nu_q(b)`.
    let fq = if va <= vb && va >= 2 {
        Forced::yes(Plus, "Q.1a")
    } else if q1 && 1 <= vb && vb < va {
        Forced::yes(Plus, "Q.1b")
    } else if !q1 && 2 <= vb && vb < va {
        Forced::yes(Plus, "Q.1b")
    } else if vb == 0 && vb < va {
        match (q1, leg) {
            (true, -1) | (false, 1) => Forced::yes(Plus, "Q.1c"),
            _ => Forced::yes(Minus, "Q.1-"),
        }
    } else if !q1 && vb == 1 && vb < va {
        Forced::yes(Minus, "Q.1-")
    } else {
        Forced::no()
    };

    let f3 = Forced::yes(Plus, "Q.2");

    let (va, vb) = (v2.va, v2.vb);
    let b4 = m(&v2.b_unit, 4);
    let b8 = m(&v2.b_unit, 8);
    let bs = b2_minus_s2(&v2);
    // The list also has `nu_2(b) >= 1, nu_2(a) = nu_2(b) + 2` as +1;
    // that item contradicts its own -1 list at `nu_2(b) = 2` and is omitted.
    let f2 = if vb >= 3 && va == vb + 2 {
        Forced::yes(Plus, "Q.3a")
    } else if vb >= 3 && va == vb + 1 {
        Forced::yes(Plus, "Q.3b")
    } else if vb == 3 && va > vb + 2 {
        Forced::yes(Plus, "Q.3c")
    } else if vb == 1 && va >= 3 && (b4 == 1 || (b8 == 3 && bs == 3)) {
        Forced::yes(Plus, "Q.3e")
    } else if vb == 0 && va > 2 && [1, 3, 7].contains(&b8) {
        Forced::yes(Plus, "Q.3f")
    } else if vb == 0 && va == 2 && b4 == 3 {
        Forced::yes(Plus, "Q.3g")
    } else if 3 <= va && va <= vb {
        Forced::yes(Plus, "Q.3h")
    } else if 3 < vb && vb < va - 2 {
        Forced::yes(Minus, "Q.3-a")
    } else if vb == 2 && va >= 3 {
        Forced::yes(Minus, "Q.3-b")
    } else if vb == 1 && va >= 3 && b8 == 3 && bs == 1 {
        Forced::yes(Minus, "Q.3-c")
    } else if vb == 1 && va >= 3 && b8 == 7 {
        Forced::yes(Minus, "Q.3-d")
    } else if vb == 0 && va > 2 && b8 == 5 {
        Forced::yes(Minus, "Q.3-e")
    } else {
        Forced::no()
    };
    Ok(vec![(two, f2), (BigInt::from(3), f3), (q, fq)])
}

/// Assumptions a prediction rests on. Always both set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditionality {
    pub parity_conjecture: bool,
    pub silverman_finite_exceptions: bool,
}

pub const CONDITIONAL_BANNER: &str = "conditional on the parity conjecture";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignSource {
    /// Every prime of `6 s` has a forced local sign.
    ForcedSigns,
    /// Taken from the constancy decider (used when `s` is not `-12 k^4`).
    ConstancyDecider,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeForced {
    #[serde(with = "crate::dec::big")]
    pub p: BigInt,
    #[serde(flatten)]
    pub forced: Forced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankJumpReport {
    #[serde(with = "crate::dec::big")]
    pub s: BigInt,
    #[serde(with = "crate::dec::big")]
    pub a: BigInt,
    #[serde(with = "crate::dec::big")]
    pub b: BigInt,
    pub generic_rank: u32,
    pub forced: Vec<PrimeForced>,
    pub forced_w: Option<Sign>,
    pub sign_source: Option<SignSource>,
    pub predicted_min_rank: Option<u32>,
    pub rank_jump: Option<bool>,
    pub conditionality: Conditionality,
}

impl fmt::Display for RankJumpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s = {}, progression {} u + {}", self.s, self.a, self.b)?;
        writeln!(f, "generic rank: {}", self.generic_rank)?;
        for pf in &self.forced {
            writeln!(f, "  p = {}: {}", pf.p, pf.forced)?;
        }
        match self.forced_w {
            Some(w) => writeln!(f, "forced W: {w}")?,
            None => writeln!(f, "forced W: none")?,
        }
        match (self.predicted_min_rank, self.rank_jump) {
            (Some(r), Some(true)) => writeln!(f, "rank jump: fibres have rank >= {r} for all but finitely many u")?,
            (Some(r), _) => writeln!(f, "no rank jump: W agrees with the generic rank parity (rank >= {r})")?,
            _ => writeln!(f, "no prediction")?,
        }
        write!(f, "({CONDITIONAL_BANNER} and finitely many exceptional fibres)")
    }
}

/// Generic rank, forced signs and the predicted lower bound for the rank of
/// the fibres of `F_s(a u + b)`.
pub fn rank_jump_report(s: &BigInt, a: &BigInt, b: &BigInt) -> Result<RankJumpReport> {
    if s.is_zero() {
        return Err(Error::Zero { what: "s" });
    }
    nonzero_ab(a, b)?;
    let generic = generic_rank(s);
    let mut forced = Vec::new();
    let (forced_w, source) = if generic == 1 {
        let mut ps: Vec<BigInt> = factorize(&(s * 6))?.primes().cloned().collect();
        ps.sort();
        for p in ps {
            let f = forced_sign(&p, s, a, b)?;
            forced.push(PrimeForced { p, forced: f });
        }
        if forced.iter().all(|pf| pf.forced.is_forced()) {
            let prod: Sign = forced.iter().filter_map(|pf| pf.forced.sign).product();
            (Some(-prod), Some(SignSource::ForcedSigns))
        } else {
            (None, None)
        }
    } else {
        match check_f(s, a, b)? {
            Verdict::Constant { sign, .. } => (Some(sign), Some(SignSource::ConstancyDecider)),
            Verdict::NonConstant { .. } => (None, None),
        }
    };
    let (predicted, jump) = match forced_w {
        Some(w) => {
            let agrees = w == Sign::parity(generic as u64);
            (Some(if agrees { generic } else { generic + 1 }), Some(!agrees))
        }
        None => (None, None),
    };
    Ok(RankJumpReport {
        s: s.clone(),
        a: a.clone(),
        b: b.clone(),
        generic_rank: generic,
        forced,
        forced_w,
        sign_source: source,
        predicted_min_rank: predicted,
        rank_jump: jump,
        conditionality: Conditionality { parity_conjecture: true, silverman_finite_exceptions: true },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn f(p: i64, s: i64, a: i64, bb: i64) -> (Option<i8>, Option<String>) {
        let r = forced_sign(&b(p), &b(s), &b(a), &b(bb)).unwrap();
        (r.sign.map(Sign::to_i8), r.item)
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(&b(-7500)), 1);
        assert_eq!(generic_rank(&b(-3)), 0);
        assert_eq!(generic_rank(&b(-12)), 1);
    }

    #[test]
    fn forced_examples() {
        assert_eq!(f(5, -7500, 6000, 60), (Some(1), Some("F5.2c".into())));
        assert_eq!(f(3, -7500, 6000, 60).0, Some(1));
        assert_eq!(f(2, -7500, 6000, 60), (Some(-1), Some("F2.6a".into())));
        assert!(forced_sign(&b(2), &b(-3), &b(1), &b(1)).is_err());
    }

    #[test]
    fn kq_examples() {
        let m = forced_sign_kq(&b(-7500), &b(6000), &b(60)).unwrap();
        let signs: Vec<_> = m.iter().map(|(p, f)| (p.to_i64().unwrap(), f.sign.map(Sign::to_i8))).collect();
        assert_eq!(signs, vec![(2, Some(-1)), (3, Some(1)), (5, Some(1))]);
        let m = forced_sign_kq(&b(-7500), &b(5), &b(1)).unwrap();
        assert_eq!(m[2].1.sign, Some(Sign::Minus));
        let m = forced_sign_kq(&(b(-12) * b(7).pow(4)), &b(8), &b(7)).unwrap();
        assert_eq!((m[0].1.sign, m[0].1.item.as_deref()), (Some(Sign::Plus), Some("Q.3f")));
        assert!(forced_sign_kq(&b(-972), &b(1), &b(1)).is_err());
    }

    #[test]
    fn kq_matches_general_lists() {
        for q in [5i64, 7, 11, 13, 17, 19, 23] {
            let s = b(-12) * b(q).pow(4);
            for ea in 0..7u32 {
                for eb in 0..7u32 {
                    for (ua, ub) in [(1, 1), (1, 3), (7, 5), (1, 7), (3, 2), (2, 3)] {
                        let a = b(ua) * b(2).pow(ea) * b(q).pow(ea % 4);
                        let bb = b(ub) * b(2).pow(eb) * b(q).pow(eb % 3);
                        let kq = forced_sign_kq(&s, &a, &bb).unwrap();
                        for (p, fk) in kq {
                            let fg = forced_sign(&p, &s, &a, &bb).unwrap();
                            assert_eq!(fk.sign, fg.sign, "q={q} p={p} a={a} b={bb} {fk} vs {fg}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = rank_jump_report(&b(-7500), &b(6000), &b(60)).unwrap();
        assert_eq!((r.generic_rank, r.forced_w, r.predicted_min_rank), (1, Some(Sign::Plus), Some(2)));
        assert_eq!(r.rank_jump, Some(true));
        assert!(r.to_string().contains(CONDITIONAL_BANNER));
        let r = rank_jump_report(&b(-972), &b(12), &b(18)).unwrap();
        assert_eq!(r.generic_rank, 1);
        let r = rank_jump_report(&b(-3), &b(8), &b(1)).unwrap();
        assert_eq!((r.generic_rank, r.forced_w, r.predicted_min_rank), (0, Some(Sign::Plus), Some(0)));
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RankJumpReport>(&js).unwrap(), r);
    }
}
