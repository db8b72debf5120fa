//! Deciding whether `W(F_s(a u + b))` is constant in `u`.
//!
//! The per-prime conditions are the enumerated list (`P5.*`, `P3.*`,
//! `C3a`..`C3g`); the 2-adic summary-row (`T1`) encoding is kept separately as
//! `T1.row-k` because the two disagree when `nu_2(a) - nu_2(b) = 2` and
//! `2 nu_2(b) = nu_2(s)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::arithmetic::{
    as_minus_3_square, factorize, is_integral, legendre_unchecked, split_unchecked,
    valuation_or_inf, valuation_q_or_inf, Valuation,
};
use crate::error::{Error, Result};
use crate::families::Progression;
use crate::global_root::{first_nonsingular, FibreEvaluator};
use crate::sign::Sign;

/// Stable identifiers for the printed conditions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    P5(u8),
    P3(u8),
    C3 { item: char, sub: Option<u8> },
    T1Row(u8),
    LCor { item: u8, sub: Option<char>, subsub: Option<u8> },
    LLem(u8),
}

const ROMAN: [&str; 6] = ["", "i", "ii", "iii", "iv", "v"];

fn roman(k: u8) -> &'static str {
    ROMAN.get(k as usize).copied().unwrap_or("?")
}

fn from_roman(s: &str) -> Option<u8> {
    ROMAN.iter().position(|r| !r.is_empty() && *r == s).map(|k| k as u8)
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionId::P5(k) => write!(f, "P5.{k}"),
            ConditionId::P3(k) => write!(f, "P3.{k}"),
            ConditionId::C3 { item, sub: None } => write!(f, "C3{item}"),
            ConditionId::C3 { item, sub: Some(k) } => write!(f, "C3{item}.{}", roman(*k)),
            ConditionId::T1Row(k) => write!(f, "T1.row-{k}"),
            ConditionId::LCor { item, sub, subsub } => {
                write!(f, "L-COR.{item}")?;
                if let Some(c) = sub {
                    write!(f, "{c}")?;
                }
                if let Some(k) = subsub {
                    write!(f, ".{}", roman(*k))?;
                }
                Ok(())
            }
            ConditionId::LLem(k) => write!(f, "L-LEM.{k}"),
        }
    }
}

impl FromStr for ConditionId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("unknown condition id `{s}`");
        let digit = |x: &str| x.parse::<u8>().map_err(|_| bad());
        if let Some(k) = s.strip_prefix("P5.") {
            return Ok(ConditionId::P5(digit(k)?));
        }
        if let Some(k) = s.strip_prefix("P3.") {
            return Ok(ConditionId::P3(digit(k)?));
        }
        if let Some(k) = s.strip_prefix("T1.row-") {
            return Ok(ConditionId::T1Row(digit(k)?));
        }
        if let Some(k) = s.strip_prefix("L-LEM.") {
            return Ok(ConditionId::LLem(digit(k)?));
        }
        if let Some(rest) = s.strip_prefix("L-COR.") {
            let (head, subsub) = match rest.split_once('.') {
                Some((h, r)) => (h, Some(from_roman(r).ok_or_else(bad)?)),
                None => (rest, None),
            };
            let item = digit(&head[..1])?;
            let sub = head[1..].chars().next();
            return Ok(ConditionId::LCor { item, sub, subsub });
        }
        if let Some(rest) = s.strip_prefix("C3") {
            let (head, sub) = match rest.split_once('.') {
                Some((h, r)) => (h, Some(from_roman(r).ok_or_else(bad)?)),
                None => (rest, None),
            };
            let mut cs = head.chars();
            let item = cs.next().filter(|c| ('a'..='g').contains(c)).ok_or_else(bad)?;
            if cs.next().is_some() {
                return Err(bad());
            }
            return Ok(ConditionId::C3 { item, sub });
        }
        Err(bad())
    }
}

impl Serialize for ConditionId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConditionId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A condition together with the prime it was checked at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matched {
    #[serde(with = "crate::dec::big_opt", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<BigInt>,
    pub id: ConditionId,
}

impl fmt::Display for Matched {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.p {
            Some(p) => write!(f, "{} at p = {p}", self.id),
            None => write!(f, "{}", self.id),
        }
    }
}

/// Two fibres of a progression with opposite root numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "crate::dec::big")]
    pub u1: BigInt,
    #[serde(with = "crate::dec::big")]
    pub t1: BigInt,
    pub w1: Sign,
    #[serde(with = "crate::dec::big")]
    pub u2: BigInt,
    #[serde(with = "crate::dec::big")]
    pub t2: BigInt,
    pub w2: Sign,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "W(t = {}) = {} at u = {}, W(t = {}) = {} at u = {}",
            self.t1, self.w1, self.u1, self.t2, self.w2, self.u2
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    NotMinus3Square,
    /// `group` is one of `P5`, `P3`, `C3`, `T1`.
    Fails {
        group: String,
        #[serde(with = "crate::dec::big")]
        p: BigInt,
    },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::NotMinus3Square => f.write_str("s not of form -3r^2"),
            Reason::Fails { group, p } => write!(f, "{group} fails at p = {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Constant { sign: Sign, matched: Vec<Matched> },
    NonConstant { reason: Reason, witnesses: Option<Witness> },
}

impl Verdict {
    pub fn is_constant(&self) -> bool {
        matches!(self, Verdict::Constant { .. })
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            Verdict::Constant { sign, .. } => Some(*sign),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Constant { sign, matched } => {
                let ids: Vec<String> = matched.iter().map(|m| m.to_string()).collect();
                write!(f, "Constant({sign}) [{}]", ids.join("; "))
            }
            Verdict::NonConstant { reason, witnesses } => {
                write!(f, "NonConstant: {reason}")?;
                if let Some(w) = witnesses {
                    write!(f, " (witness: {w})")?;
                }
                Ok(())
            }
        }
    }
}

/// Outcome of a single prime's check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeVerdict {
    #[serde(with = "crate::dec::big")]
    pub p: BigInt,
    pub constant: bool,
    /// The condition that holds; absent when none does, or when `p` does
    /// not divide `6 s` and `w_p*` is trivially `+1`.
    pub matched: Option<ConditionId>,
}

/// Which encoding of the 2-adic condition to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TwoAdic {
    #[default]
    Conditions,
    Table1,
}

fn nonzero(x: &BigInt, what: &'static str) -> Result<()> {
    if x.is_zero() {
        return Err(Error::Zero { what });
    }
    Ok(())
}

fn nu(p: &BigInt, x: &BigInt) -> i64 {
    split_unchecked(p, x).0 as i64
}

fn require_form(s: &BigInt) -> Result<()> {
    if as_minus_3_square(s).is_none() {
        return Err(Error::NotMinus3Square(s.clone()));
    }
    Ok(())
}

fn check_inputs(s: &BigInt, a: &BigInt, b: &BigInt) -> Result<()> {
    nonzero(s, "s")?;
    nonzero(a, "a")?;
    nonzero(b, "b")
}

fn c3(item: char, sub: Option<u8>) -> ConditionId {
    ConditionId::C3 { item, sub }
}

/// The enumerated 2-adic list `C3a`..`C3g`.
fn two_adic_conditions(s: &BigInt, a: &BigInt, b: &BigInt) -> Option<ConditionId> {
    let two = BigInt::from(2);
    let (vs, va) = (nu(&two, s), nu(&two, a));
    let (vb, b2) = split_unchecked(&two, b);
    let vb = vb as i64;
    let b2m4 = b2.mod_floor_i64(4);
    let d = vs - 2 * vb;
    let vs4 = vs.rem_euclid(4);
    if vb + 2 < va {
        return Some(c3('a', None));
    }
    if vb + 2 == va {
        if d == 0 {
            return Some(c3('b', None));
        }
        if vs4 == 0 {
            if d < 0 {
                return Some(c3('c', Some(1)));
            }
            if d.rem_euclid(4) == 2 && d > 0 {
                return Some(c3('c', Some(2)));
            }
            if d.rem_euclid(4) == 0 && d > 0 && b2m4 == 1 {
                return Some(c3('c', Some(3)));
            }
        }
        if vs4 == 2 {
            if d < 0 {
                return Some(c3('d', Some(1)));
            }
            if d == 2 && b2m4 == 3 {
                return Some(c3('d', Some(2)));
            }
            if d.rem_euclid(4) == 0 && d > 0 {
                return Some(c3('d', Some(3)));
            }
            if d == 6 {
                return Some(c3('d', Some(4)));
            }
            if d.rem_euclid(4) == 2 && d > 6 && b2m4 == 1 {
                return Some(c3('d', Some(5)));
            }
        }
    }
    if vb + 1 == va && d != 0 {
        if d <= -4 {
            return Some(c3('e', Some(1)));
        }
        if d == -2 && vs4 == 2 {
            return Some(c3('e', Some(2)));
        }
    }
    if vs + 6 <= 2 * va && va <= vb {
        return Some(c3('f', None));
    }
    if vs + 4 == 2 * va && va <= vb && vs4 == 2 {
        return Some(c3('g', None));
    }
    None
}

/// The 2-adic summary rows, numbered top to bottom.
fn two_adic_table1(s: &BigInt, a: &BigInt, b: &BigInt) -> Option<ConditionId> {
    let two = BigInt::from(2);
    let (vs, va) = (nu(&two, s), nu(&two, a));
    let (vb, b2) = split_unchecked(&two, b);
    let b2m4 = b2.mod_floor_i64(4);
    let d = va - vb as i64;
    let e = vs - 2 * va;
    let vs4 = vs.rem_euclid(4);
    let e4 = e.rem_euclid(4);
    let row = if d > 2 {
        1
    } else if d == 2 && vs4 == 0 {
        if e < -4 {
            2
        } else if e4 == 2 && e > -4 {
            3
        } else if e4 == 0 && e > -4 && b2m4 == 1 {
            4
        } else {
            return None;
        }
    } else if d == 2 && vs4 == 2 {
        if e < -4 {
            5
        } else if e == -2 && b2m4 == 3 {
            6
        } else if e4 == 0 && e > -4 {
            7
        } else if e == 2 {
            8
        } else if e4 == 2 && e > 2 && b2m4 == 1 {
            9
        } else {
            return None;
        }
    } else if d <= 1 && vs4 == 0 && e <= -6 {
        10
    } else if d <= 1 && vs4 == 2 && e <= -6 {
        11
    } else if d <= 1 && vs4 == 2 && e == -4 {
        12
    } else {
        return None;
    };
    Some(ConditionId::T1Row(row))
}

trait ModSmall {
    fn mod_floor_i64(&self, m: i64) -> i64;
}

impl ModSmall for BigInt {
    fn mod_floor_i64(&self, m: i64) -> i64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        self.mod_floor(&BigInt::from(m)).to_i64().unwrap()
    }
}

fn prime_verdict(p: &BigInt, id: Option<ConditionId>) -> PrimeVerdict {
    PrimeVerdict { p: p.clone(), constant: id.is_some(), matched: id }
}

/// Whether `w_p*(a u + b)` is constant, by the per-prime conditions.
pub fn check_f_p(p: &BigInt, s: &BigInt, a: &BigInt, b: &BigInt) -> Result<PrimeVerdict> {
    check_f_p_with(p, s, a, b, TwoAdic::Conditions)
}

pub fn check_f_p_with(
    p: &BigInt,
    s: &BigInt,
    a: &BigInt,
    b: &BigInt,
    enc: TwoAdic,
) -> Result<PrimeVerdict> {
    check_inputs(s, a, b)?;
    if !crate::arithmetic::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    require_form(s)?;
    let (va, vb, vs) = (nu(p, a), nu(p, b), nu(p, s));
    let id = if p == &BigInt::from(2) {
        match enc {
            TwoAdic::Conditions => two_adic_conditions(s, a, b),
            TwoAdic::Table1 => two_adic_table1(s, a, b),
        }
    } else if p == &BigInt::from(3) {
        if vb < va {
            Some(ConditionId::P3(1))
        } else if vs - 3 <= 2 * va && va <= vb {
            Some(ConditionId::P3(2))
        } else {
            None
        }
    } else if vs == 0 {
        return Ok(PrimeVerdict { p: p.clone(), constant: true, matched: None });
    } else if vb < va {
        Some(ConditionId::P5(1))
    } else if vs <= 2 * va && va <= vb {
        Some(ConditionId::P5(2))
    } else {
        None
    };
    Ok(prime_verdict(p, id))
}

/// Summary-row decision at `p = 2`.
pub fn check_f_table1(s: &BigInt, a: &BigInt, b: &BigInt) -> Result<PrimeVerdict> {
    check_f_p_with(&BigInt::from(2), s, a, b, TwoAdic::Table1)
}

/// The primes at which a condition is checked: 2, 3 and every prime of `s`.
fn relevant_primes(s: &BigInt) -> Result<Vec<BigInt>> {
    let mut ps: Vec<BigInt> = factorize(&(s * 6))?.primes().cloned().collect();
    ps.sort();
    Ok(ps)
}

/// Constancy of `W(F_s(a u + b))` over `u` in `Z`.
pub fn check_f(s: &BigInt, a: &BigInt, b: &BigInt) -> Result<Verdict> {
    check_f_with(s, a, b, TwoAdic::Conditions)
}

pub fn check_f_with(s: &BigInt, a: &BigInt, b: &BigInt, enc: TwoAdic) -> Result<Verdict> {
    check_inputs(s, a, b)?;
    if as_minus_3_square(s).is_none() {
        return Ok(Verdict::NonConstant { reason: Reason::NotMinus3Square, witnesses: None });
    }
    let mut matched = Vec::new();
    for p in relevant_primes(s)? {
        let pv = check_f_p_with(&p, s, a, b, enc)?;
        if !pv.constant {
            let group = match (p.to_string().as_str(), enc) {
                ("2", TwoAdic::Conditions) => "C3",
                ("2", TwoAdic::Table1) => "T1",
                ("3", _) => "P3",
                _ => "P5",
            };
            return Ok(Verdict::NonConstant {
                reason: Reason::Fails { group: group.into(), p },
                witnesses: None,
            });
        }
        if let Some(id) = pv.matched {
            matched.push(Matched { p: Some(p), id });
        }
    }
    let sign = sign_at_first_fibre(s, a, b)?;
    Ok(Verdict::Constant { sign, matched })
}

fn sign_at_first_fibre(s: &BigInt, a: &BigInt, b: &BigInt) -> Result<Sign> {
    let prog = Progression { a: a.clone(), b: b.clone() };
    let u = first_nonsingular(s, &prog);
    FibreEvaluator::new(s)?.sign(&prog.at(&u))
}

/// The constant value of `W(F_s(a u + b))`; an error unless [`check_f`]
/// says the family is constant.
pub fn constant_value(s: &BigInt, a: &BigInt, b: &BigInt) -> Result<Sign> {
    match check_f(s, a, b)? {
        Verdict::Constant { sign, .. } => Ok(sign),
        Verdict::NonConstant { reason, .. } => Err(Error::NotConstant(reason.to_string())),
    }
}

/// Result of a sufficient-condition check on an `L` family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficientCheck {
    pub holds: bool,
    pub matched: Vec<Matched>,
    /// The first condition that fails.
    pub failed: Option<Matched>,
}

impl fmt::Display for SufficientCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            let ids: Vec<String> = self.matched.iter().map(|m| m.to_string()).collect();
            write!(f, "sufficient conditions hold [{}]", ids.join("; "))
        } else {
            match &self.failed {
                Some(m) => write!(f, "not covered: {m} fails"),
                None => f.write_str("not covered"),
            }
        }
    }
}

struct Tracker {
    matched: Vec<Matched>,
    failed: Option<Matched>,
}

impl Tracker {
    fn new() -> Self {
        Tracker { matched: Vec::new(), failed: None }
    }

    fn record(&mut self, p: &BigInt, ok: Option<ConditionId>, fail: ConditionId) {
        match ok {
            Some(id) => self.matched.push(Matched { p: Some(p.clone()), id }),
            None if self.failed.is_none() => self.failed = Some(Matched { p: Some(p.clone()), id: fail }),
            None => {}
        }
    }

    fn finish(self) -> SufficientCheck {
        SufficientCheck { holds: self.failed.is_none(), matched: self.matched, failed: self.failed }
    }
}

fn vq(p: &BigInt, x: &BigRational) -> i64 {
    valuation_q_or_inf(p, x).finite().expect("nonzero rational")
}

fn primes_of_rational(x: &BigRational) -> Result<Vec<BigInt>> {
    let mut out: Vec<BigInt> = factorize(x.numer())?.primes().cloned().collect();
    out.extend(factorize(x.denom())?.primes().cloned());
    Ok(out)
}

fn lcor(item: u8, sub: Option<char>, subsub: Option<u8>) -> ConditionId {
    ConditionId::LCor { item, sub, subsub }
}

/// The sufficient conditions for `L_{w,-3r^2,v}(a u + b)` to have constant
/// root number for every progression.
pub fn check_l_corollary(w: &BigRational, r: &BigRational, v: &BigRational) -> Result<SufficientCheck> {
    if w.is_zero() || r.is_zero() || v.is_zero() {
        return Err(Error::Zero { what: "w, r and v" });
    }
    let big_s = BigRational::from_integer(BigInt::from(-3)) * r * r * w * w;
    for (name, x) in [("w", w.clone()), ("w v", w * v), ("-3 r^2 w^2", big_s)] {
        if !is_integral(&x) {
            return Err(Error::NonIntegral(format!("{name} = {x}")));
        }
    }
    let mut tr = Tracker::new();
    let mut ps = primes_of_rational(r)?;
    ps.extend(primes_of_rational(w)?);
    ps.sort();
    ps.dedup();
    for p in ps.iter().filter(|p| **p > BigInt::from(3)) {
        let (vv, vr) = (vq(p, v), vq(p, r));
        let ok = (vv < 0 || vr <= 0).then(|| lcor(1, None, None));
        tr.record(p, ok, lcor(1, None, None));
    }
    let three = BigInt::from(3);
    let (vv3, vr3) = (vq(&three, v), vq(&three, r));
    let ok = (vv3 < 0 || vr3 - 1 <= 0).then(|| lcor(2, None, None));
    tr.record(&three, ok, lcor(2, None, None));
    let two = BigInt::from(2);
    let (vv2, vr2, vw2) = (vq(&two, v), vq(&two, r), vq(&two, w));
    let ok = if vv2 <= -2 {
        Some(lcor(3, Some('a'), None))
    } else if vv2 == -1 && vr2 <= -2 {
        Some(lcor(3, Some('b'), Some(1)))
    } else if vv2 == -1 && vr2 == -1 && vw2 % 2 == 0 {
        Some(lcor(3, Some('b'), Some(2)))
    } else if vr2 + 3 <= 0 && vv2 >= 0 {
        Some(lcor(3, Some('c'), None))
    } else if vr2 + 2 == 0 && vv2 >= 0 {
        Some(lcor(3, Some('d'), None))
    } else {
        None
    };
    tr.record(&two, ok, lcor(3, None, None));
    Ok(tr.finish())
}

/// The sufficient conditions on integer `(w, r, v, a, b)` for
/// `L_{w,-3r^2,v}(a u + b)` to have constant root number.
pub fn check_l_lemma(
    w: &BigInt,
    r: &BigInt,
    v: &BigInt,
    a: &BigInt,
    b: &BigInt,
) -> Result<SufficientCheck> {
    nonzero(w, "w")?;
    nonzero(r, "r")?;
    nonzero(v, "v")?;
    nonzero(a, "a")?;
    let vi = |p: &BigInt, x: &BigInt| valuation_or_inf(p, x);
    let fin = |k: i64| Valuation::Finite(k);
    let mut tr = Tracker::new();
    let mut ps: Vec<BigInt> = factorize(r)?.primes().cloned().filter(|p| *p > BigInt::from(3)).collect();
    ps.sort();
    for p in &ps {
        let ok = vi(p, v) == fin(0)
            && vi(p, a) == fin(0)
            && vi(p, b) == fin(0)
            && nu(p, w) % 2 == 1
            && legendre_unchecked(&-v, p) == -1;
        tr.record(p, ok.then_some(ConditionId::LLem(1)), ConditionId::LLem(1));
    }
    let three = BigInt::from(3);
    let ok = vi(&three, a) > fin(0) && vi(&three, b) > fin(0) && vi(&three, v) == fin(0);
    tr.record(&three, ok.then_some(ConditionId::LLem(2)), ConditionId::LLem(2));
    let two = BigInt::from(2);
    let ok = vi(&two, a) > fin(1) && vi(&two, b) > fin(0) && vi(&two, v) == fin(0);
    tr.record(&two, ok.then_some(ConditionId::LLem(3)), ConditionId::LLem(3));
    Ok(tr.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(b(n), b(d))
    }

    fn id(s: &str) -> ConditionId {
        s.parse().unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for s in ["P5.1", "P3.2", "C3a", "C3c.iii", "C3d.v", "T1.row-12", "L-COR.1", "L-COR.3b.ii", "L-COR.3c", "L-LEM.2"] {
            assert_eq!(id(s).to_string(), s);
        }
        assert!("C3h".parse::<ConditionId>().is_err());
    }

    #[test]
    fn per_prime_examples() {
        let pv = check_f_p(&b(3), &b(-972), &b(12), &b(18)).unwrap();
        assert_eq!((pv.constant, pv.matched), (true, Some(id("P3.2"))));
        let pv = check_f_p(&b(2), &b(-972), &b(12), &b(18)).unwrap();
        assert!(!pv.constant);
        let pv = check_f_p(&b(2), &b(-3), &b(4), &b(1)).unwrap();
        assert_eq!(pv.matched, Some(id("C3b")));
        assert_eq!(check_f_p(&b(5), &b(-7500), &b(6000), &b(60)).unwrap().matched, Some(id("P5.1")));
        let pv = check_f_p(&b(5), &b(-75), &b(250), &b(5)).unwrap();
        assert_eq!(pv.matched, Some(id("P5.1")));
    }

    #[test]
    fn table1_examples() {
        assert!(!check_f_table1(&b(-972), &b(12), &b(18)).unwrap().constant);
        assert!(!check_f_table1(&b(-3), &b(4), &b(1)).unwrap().constant);
        assert_eq!(check_f_table1(&b(-3), &b(8), &b(1)).unwrap().matched, Some(id("T1.row-1")));
    }

    #[test]
    fn table1_agrees_with_conditions_away_from_c3b() {
        for r in 1..40i64 {
            let s = b(-3 * r * r);
            for ea in 0..8u32 {
                for eb in 0..8u32 {
                    for (ua, ub) in [(1, 1), (3, 1), (1, 3), (5, 7)] {
                        let (a, bb) = (b(ua) << ea, b(ub) << eb);
                        let c = check_f_p(&b(2), &s, &a, &bb).unwrap();
                        let t = check_f_table1(&s, &a, &bb).unwrap();
                        if c.matched != Some(id("C3b")) {
                            assert_eq!(c.constant, t.constant, "s={s} a={a} b={bb} {:?}", c.matched);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn check_f_examples() {
        assert_eq!(check_f(&b(-7500), &b(6000), &b(60)).unwrap().sign(), Some(Sign::Plus));
        let v = check_f(&b(-972), &b(12), &b(18)).unwrap();
        assert_eq!(v.to_string(), "NonConstant: C3 fails at p = 2");
        let v = check_f(&b(12), &b(1), &b(1)).unwrap();
        assert_eq!(v.to_string(), "NonConstant: s not of form -3r^2");
        assert!(check_f(&b(-3), &b(0), &b(1)).is_err());
        assert_eq!(constant_value(&b(-3), &b(8), &b(1)).unwrap(), Sign::Plus);
        assert_eq!(constant_value(&b(-27), &b(3), &b(1)).is_ok(), check_f(&b(-27), &b(3), &b(1)).unwrap().is_constant());
    }

    #[test]
    fn verdict_json_round_trips() {
        for v in [
            check_f(&b(-3), &b(8), &b(1)).unwrap(),
            check_f(&b(-972), &b(12), &b(18)).unwrap(),
            check_f(&b(5), &b(1), &b(1)).unwrap(),
        ] {
            let js = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<Verdict>(&js).unwrap(), v, "{js}");
        }
    }

    #[test]
    fn l_corollary_examples() {
        let c = check_l_corollary(&q(8, 1), &q(1, 8), &q(1, 1)).unwrap();
        assert!(c.holds);
        assert!(c.matched.iter().any(|m| m.id == id("L-COR.3c")));
        let c = check_l_corollary(&q(1, 1), &q(1, 1), &q(1, 1)).unwrap();
        assert_eq!(c.failed.map(|m| m.id), Some(id("L-COR.3")));
        assert!(matches!(check_l_corollary(&q(1, 1), &q(1, 8), &q(1, 1)), Err(Error::NonIntegral(_))));
        for v0 in -5..5 {
            let c = check_l_corollary(&q(12, 1), &q(3, 2), &(q(v0, 1) + q(3, 2))).unwrap();
            assert!(c.holds, "v0 = {v0}");
        }
    }

    #[test]
    fn l_lemma_examples() {
        assert!(check_l_lemma(&b(7), &b(14), &b(1), &b(12), &b(6)).unwrap().holds);
        let c = check_l_lemma(&b(7), &b(14), &b(1), &b(4), &b(2)).unwrap();
        assert_eq!(c.failed.map(|m| m.id), Some(id("L-LEM.2")));
        assert!(!check_l_lemma(&b(1), &b(1), &b(2), &b(6), &b(3)).unwrap().holds);
    }
}
