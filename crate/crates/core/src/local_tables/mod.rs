//! The local functions `w_p*` on `F_s(t)`, driven by the table data in
//! `data/local_tables.txt`.
//!
//! Each table is a list of guarded rows. Within the selected table exactly
//! one ordinary row must fire; `otherwise` rows fire only when no ordinary
//! row does. Anything else is reported as a fall-through or an overlap
//! rather than papered over.

mod engine;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::arithmetic::{is_prime, legendre_unchecked, split_unchecked, Valuation};
use crate::error::{Error, Result};
use crate::families::is_singular;
use crate::sign::Sign;

pub use engine::{PrimeClass, Row, RowHit, Table, TableSet};

/// Every modulus applied to a unit part divides this.
pub(crate) const RES_MOD: i64 = 144;

pub const TABLE_DATA: &str = include_str!("../../data/local_tables.txt");
pub const ERRATA_DATA: &str = include_str!("../../data/errata.txt");

/// Residues of the unit parts mod 144.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residues {
    pub s_p: i64,
    pub t_p: Option<i64>,
    pub tts_p: i64,
}

/// Quadratic symbols at an odd prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symbols {
    pub minus_one: i8,
    pub two: i8,
    pub three: i8,
    pub minus_three: i8,
    pub s_p: i8,
    pub t_p: Option<i8>,
    pub three_t_p: Option<i8>,
}

/// All p-adic data of the fibre `F_s(t)` that the tables look at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalProfile {
    #[serde(with = "crate::dec::big")]
    pub p: BigInt,
    #[serde(with = "crate::dec::big")]
    pub s: BigInt,
    #[serde(with = "crate::dec::big")]
    pub t: BigInt,
    pub nu_s: i64,
    #[serde(with = "crate::dec::big")]
    pub s_unit: BigInt,
    pub nu_t: Valuation,
    /// Absent when `t = 0`.
    #[serde(with = "crate::dec::big_opt")]
    pub t_unit: Option<BigInt>,
    pub nu_tts: i64,
    #[serde(with = "crate::dec::big")]
    pub tts_unit: BigInt,
    pub residues: Residues,
    /// Present for `p >= 5`.
    pub symbols: Option<Symbols>,
}

fn res(x: &BigInt) -> i64 {
    x.mod_floor(&BigInt::from(RES_MOD)).to_i64().unwrap()
}

impl LocalProfile {
    /// Profile without the primality check; `p` must be prime.
    pub(crate) fn new_unchecked(p: &BigInt, s: &BigInt, t: &BigInt) -> Result<LocalProfile> {
        if is_singular(s, t) {
            return Err(Error::SingularFibre { s: s.clone(), t: t.clone() });
        }
        let tts = t * t - s;
        let (nu_s, s_unit) = split_unchecked(p, s);
        let (nu_t, t_unit) = if t.is_zero() {
            (Valuation::Infinite, None)
        } else {
            let (v, u) = split_unchecked(p, t);
            (Valuation::Finite(v as i64), Some(u))
        };
        let (nu_tts, tts_unit) = split_unchecked(p, &tts);
        let residues = Residues { s_p: res(&s_unit), t_p: t_unit.as_ref().map(res), tts_p: res(&tts_unit) };
        let symbols = if p > &BigInt::from(3) {
            let leg = |x: &BigInt| legendre_unchecked(x, p);
            Some(Symbols {
                minus_one: leg(&BigInt::from(-1)),
                two: leg(&BigInt::from(2)),
                three: leg(&BigInt::from(3)),
                minus_three: leg(&BigInt::from(-3)),
                s_p: leg(&s_unit),
                t_p: t_unit.as_ref().map(leg),
                three_t_p: t_unit.as_ref().map(|u| leg(&(u * 3))),
            })
        } else {
            None
        };
        Ok(LocalProfile {
            p: p.clone(),
            s: s.clone(),
            t: t.clone(),
            nu_s: nu_s as i64,
            s_unit,
            nu_t,
            t_unit,
            nu_tts: nu_tts as i64,
            tts_unit,
            residues,
            symbols,
        })
    }
}

/// The p-adic profile of `F_s(t)`.
pub fn profile(p: &BigInt, s: &BigInt, t: &BigInt) -> Result<LocalProfile> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    LocalProfile::new_unchecked(p, s, t)
}

/// The tables as shipped.
pub fn tables() -> &'static TableSet {
    static TABLES: OnceLock<TableSet> = OnceLock::new();
    TABLES.get_or_init(|| TableSet::parse(TABLE_DATA).expect("bundled table data must parse"))
}

/// The tables with the shipped errata overlay applied. The shipped overlay
/// is empty, so this equals [`tables`] unless the data file changes.
pub fn tables_with_errata() -> Result<TableSet> {
    tables().with_overlay(ERRATA_DATA)
}

/// `w_p*(F_s(t))`.
pub fn w_star(p: &BigInt, s: &BigInt, t: &BigInt) -> Result<Sign> {
    Ok(w_star_detail(p, s, t)?.sign)
}

/// `w_p*(F_s(t))` together with the row that produced it.
pub fn w_star_detail(p: &BigInt, s: &BigInt, t: &BigInt) -> Result<RowHit> {
    w_star_with(tables(), p, s, t)
}

pub fn w_star_with(tables: &TableSet, p: &BigInt, s: &BigInt, t: &BigInt) -> Result<RowHit> {
    tables.evaluate(&profile(p, s, t)?)
}

/// As [`w_star_with`] but trusts the caller that `p` is prime.
pub(crate) fn w_star_prime(tables: &TableSet, p: &BigInt, s: &BigInt, t: &BigInt) -> Result<RowHit> {
    tables.evaluate(&LocalProfile::new_unchecked(p, s, t)?)
}
