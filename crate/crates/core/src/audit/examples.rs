//! The worked example families, re-run through the table engine and the
//! deciders, with every disagreement written to the ledger.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::ledger::{DiscrepancyLedger, FibreRecord, LedgerRecord, RecordKind};
use super::{falsify_constancy, local_values};
use crate::constancy::{check_f, check_f_p, check_f_table1, check_l_lemma};
use crate::error::{Error, Result};
use crate::families::{l_to_f_integral, Progression};
use crate::global_root::{root_number_f, FibreEvaluator, RootNumberBreakdown};
use crate::local_tables::{w_star_detail, RowHit};
use crate::rankjump::{forced_sign, generic_rank, rank_jump_report};
use crate::sign::Sign;

/// Window used for every example family.
pub const WINDOW: i64 = 100;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn f_family(s: &BigInt, a: &BigInt, bb: &BigInt) -> String {
    format!("F_{{{s}}}({a}u{}{})", if bb.is_negative() { "" } else { "+" }, bb)
}

fn l_family(w: i64, s: i64, v: i64, a: i64, bb: i64) -> String {
    format!("L_{{{w},{s},{v}}}({a}u+{bb})")
}

/// Fibres of a window, singular ones skipped.
fn window(eval: impl Fn(&BigInt) -> Result<RootNumberBreakdown>) -> Result<Vec<(BigInt, RootNumberBreakdown)>> {
    let mut out = Vec::new();
    for u in -WINDOW..=WINDOW {
        let u = b(u);
        match eval(&u) {
            Ok(bd) => out.push((u, bd)),
            Err(Error::SingularFibre { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn counts(fs: &[(BigInt, RootNumberBreakdown)]) -> (usize, usize) {
    let plus = fs.iter().filter(|(_, bd)| bd.total == Sign::Plus).count();
    (plus, fs.len() - plus)
}

fn counts_text(fs: &[(BigInt, RootNumberBreakdown)]) -> String {
    let (p, m) = counts(fs);
    format!("{p} fibres with W = +1 and {m} with W = -1 over |u| <= {WINDOW}")
}

/// The first fibre of each sign, in window order starting from u = 0.
fn first_of_each(fs: &[(BigInt, RootNumberBreakdown)]) -> Vec<FibreRecord> {
    let mut order: Vec<&(BigInt, RootNumberBreakdown)> = fs.iter().collect();
    order.sort_by_key(|(u, _)| (u.abs(), u.is_negative()));
    let mut out: Vec<FibreRecord> = Vec::new();
    for (u, bd) in order {
        if out.iter().all(|f| f.w != Some(bd.total)) {
            out.push(FibreRecord::from_breakdown(u.clone(), bd));
        }
    }
    out
}

/// The prime whose local factor differs between two fibres, smallest first.
fn flipping_prime(x: &RootNumberBreakdown, y: &RootNumberBreakdown) -> Option<BigInt> {
    x.factors.iter().find(|(p, w)| y.factor(p).unwrap_or(Sign::Plus) != *w).map(|(p, _)| p.clone())
}

fn row_name(h: &RowHit) -> String {
    format!("{}.{}", h.table, h.ordinal)
}

/// `F_{-972}(12 u + 18)`, claimed to be `-1` on every integer fibre.
fn base_change_claim(led: &mut DiscrepancyLedger) -> Result<()> {
    let (s, a, bb) = (b(-972), b(12), b(18));
    let ev = FibreEvaluator::new(&s)?;
    let prog = Progression { a: a.clone(), b: bb.clone() };
    let fs = window(|u| ev.eval(&prog.at(u)))?;
    let verdict = check_f(&s, &a, &bb)?;
    let (plus, _) = counts(&fs);
    if plus > 0 {
        let fibres = first_of_each(&fs);
        let bad = fs.iter().find(|(_, bd)| bd.total == Sign::Plus).map(|(_, bd)| bd).unwrap();
        let good = fs.iter().find(|(_, bd)| bd.total == Sign::Minus).map(|(_, bd)| bd);
        let prime = good.and_then(|g| flipping_prime(bad, g));
        let table_row = match &prime {
            Some(p) => Some(row_name(&w_star_detail(p, &s, &bad.t)?)),
            None => None,
        };
        led.push(LedgerRecord {
            kind: RecordKind::TableVsPaperExample,
            family: f_family(&s, &a, &bb),
            s,
            a,
            b: bb,
            prime,
            table_row,
            condition_id: None,
            claim: "every integer fibre has root number -1".into(),
            observed: format!("{}; check_f: {verdict}", counts_text(&fs)),
            fibres,
        });
    }
    Ok(())
}

fn rank_jump_example(led: &mut DiscrepancyLedger) -> Result<()> {
    let (s, a, bb) = (b(-7500), b(6000), b(60));
    let ev = FibreEvaluator::new(&s)?;
    let prog = Progression { a: a.clone(), b: bb.clone() };
    let fs = window(|u| ev.eval(&prog.at(u)))?;
    let (plus, minus) = counts(&fs);
    let verdict = check_f(&s, &a, &bb)?;
    let report = rank_jump_report(&s, &a, &bb)?;
    let mk = |kind, cond: Option<String>, observed: String| LedgerRecord {
        kind,
        family: f_family(&s, &a, &bb),
        s: s.clone(),
        a: a.clone(),
        b: bb.clone(),
        prime: None,
        table_row: None,
        condition_id: cond,
        claim: "root number +1 on every fibre, rank at least 2".into(),
        observed,
        fibres: first_of_each(&fs),
    };
    if minus > 0 || plus == 0 {
        led.push(mk(RecordKind::TableVsPaperExample, None, counts_text(&fs)));
    }
    if verdict.sign() != Some(Sign::Plus) {
        led.push(mk(RecordKind::TheoremVsTable, None, format!("check_f: {verdict}")));
    }
    if report.forced_w != Some(Sign::Plus) || report.predicted_min_rank != Some(2) {
        let w = report.forced_w.map_or("none".to_string(), |w| w.to_string());
        led.push(mk(RecordKind::TheoremVsTable, None, format!("forced W {w}, generic rank {}", report.generic_rank)));
    }
    Ok(())
}

/// `L_{7,-588,1}(a u + b)`, claimed constant +1 on the integers.
fn l_example(led: &mut DiscrepancyLedger, a: i64, bb: i64) -> Result<()> {
    let (w, r, v) = (b(7), b(14), b(1));
    let lemma = check_l_lemma(&w, &r, &v, &b(a), &b(bb))?;
    let q = |x: i64| BigRational::from_integer(b(x));
    let fs = window(|u| {
        let t = BigRational::from_integer(b(a) * u + bb);
        let (big_s, big_t) = l_to_f_integral(&q(7), &q(-588), &q(1), &t)?;
        root_number_f(&big_s, &big_t)
    })?;
    let (plus, minus) = counts(&fs);
    let single = plus == 0 || minus == 0;
    let mk = |cond: Option<String>, observed: String| LedgerRecord {
        kind: RecordKind::LemmaVsExample,
        family: l_family(7, -588, 1, a, bb),
        s: b(-588),
        a: b(a),
        b: b(bb),
        prime: lemma.failed.as_ref().and_then(|m| m.p.clone()),
        table_row: None,
        condition_id: cond,
        claim: "constant root number +1 on integer fibres, by the sufficient conditions".into(),
        observed,
        fibres: first_of_each(&fs),
    };
    if !lemma.holds {
        let id = lemma.failed.as_ref().map(|m| m.id.to_string());
        led.push(mk(id, format!("sufficient conditions fail ({lemma}); {}", counts_text(&fs))));
    } else if !single || minus > 0 {
        led.push(mk(None, format!("sufficient conditions hold; {}", counts_text(&fs))));
    }
    Ok(())
}

/// `F_{-28812}(7 u + 7)`: non-constant on the integers, and `-1` at `u = 1`.
fn not_from_constant(led: &mut DiscrepancyLedger) -> Result<()> {
    let (s, a, bb) = (b(-28812), b(7), b(7));
    let mut mk = |cond: &str, claim: &str, observed: String, fibres: Vec<FibreRecord>| {
        led.push(LedgerRecord {
            kind: RecordKind::TableVsPaperExample,
            family: f_family(&s, &a, &bb),
            s: s.clone(),
            a: a.clone(),
            b: bb.clone(),
            prime: None,
            table_row: None,
            condition_id: (!cond.is_empty()).then(|| cond.to_string()),
            claim: claim.into(),
            observed,
            fibres,
        })
    };
    if falsify_constancy(&s, &a, &bb, 1000)?.is_none() {
        mk("", "non-constant root number on integer fibres", "no witness within budget 1000".into(), vec![]);
    }
    let bd = root_number_f(&s, &b(14))?;
    if bd.total != Sign::Minus {
        let f = FibreRecord::from_breakdown(b(1), &bd);
        mk("", "W = -1 at u = 1 (t = 14)", format!("W = {}", bd.total), vec![f]);
    }
    Ok(())
}

/// The per-prime verdict at `p` against the values the tables take over the
/// probe set; returns one fibre per value.
fn checker_vs_enumeration(led: &mut DiscrepancyLedger, p: &BigInt, s: &BigInt, a: &BigInt, bb: &BigInt) -> Result<Vec<FibreRecord>> {
    let verdict = check_f(s, a, bb)?;
    let pv = check_f_p(p, s, a, bb)?;
    let vals = local_values(p, s, a, bb)?;
    let ev = FibreEvaluator::new(s)?;
    let prog = Progression { a: a.clone(), b: bb.clone() };
    let fibres = vals
        .iter()
        .map(|(_, u, _)| ev.eval(&prog.at(u)).map(|bd| FibreRecord::from_breakdown(u.clone(), &bd)))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<String> = vals.iter().map(|(w, _, h)| format!("{}={w}", row_name(h))).collect();
    if pv.constant != (vals.len() == 1) {
        led.push(LedgerRecord {
            kind: RecordKind::TheoremVsTable,
            family: f_family(s, a, bb),
            s: s.clone(),
            a: a.clone(),
            b: bb.clone(),
            prime: Some(p.clone()),
            table_row: Some(rows.join(",")),
            condition_id: pv.matched.as_ref().map(|c| c.to_string()),
            claim: format!("{} at p = {p}; check_f: {verdict}", if pv.constant { "constant" } else { "not constant" }),
            observed: format!("w_{p}* takes {} distinct values over the probe set", vals.len()),
            fibres: fibres.clone(),
        });
    }
    Ok(fibres)
}

/// `(-3, 4, 1)`: the enumerated conditions call it constant; the tables do not.
fn synthetic_c3b(led: &mut DiscrepancyLedger) -> Result<()> {
    let (s, a, bb) = (b(-3), b(4), b(1));
    let two = b(2);
    let fibres = checker_vs_enumeration(led, &two, &s, &a, &bb)?;
    let p2 = check_f_p(&two, &s, &a, &bb)?;
    let t1 = check_f_table1(&s, &a, &bb)?;
    if p2.constant != t1.constant {
        let show = |c: bool, m: &Option<crate::constancy::ConditionId>| {
            format!("{} ({})", if c { "constant" } else { "not constant" }, m.as_ref().map_or("-".into(), |x| x.to_string()))
        };
        led.push(LedgerRecord {
            kind: RecordKind::TheoremVsTable1,
            family: f_family(&s, &a, &bb),
            s,
            a,
            b: bb,
            prime: Some(two),
            table_row: t1.matched.as_ref().map(|c| c.to_string()),
            condition_id: p2.matched.as_ref().map(|c| c.to_string()),
            claim: format!("conditions: {}", show(p2.constant, &p2.matched)),
            observed: format!("T1 rows: {}", show(t1.constant, &t1.matched)),
            fibres,
        });
    }
    Ok(())
}

/// Forced local signs compared against the probe-set values.
fn forced_signs(led: &mut DiscrepancyLedger, s: &BigInt, a: &BigInt, bb: &BigInt) -> Result<()> {
    if generic_rank(s) != 1 {
        return Ok(());
    }
    let mut ps: Vec<BigInt> = crate::arithmetic::factorize(&(s * 6))?.primes().cloned().collect();
    ps.sort();
    let ev = FibreEvaluator::new(s)?;
    let prog = Progression { a: a.clone(), b: bb.clone() };
    for p in ps {
        let f = forced_sign(&p, s, a, bb)?;
        let Some(sign) = f.sign else { continue };
        let vals = local_values(&p, s, a, bb)?;
        let Some((w, u, hit)) = vals.iter().find(|(w, _, _)| *w != sign) else { continue };
        let bd = ev.eval(&prog.at(u))?;
        led.push(LedgerRecord {
            kind: RecordKind::TheoremVsTable,
            family: f_family(s, a, bb),
            s: s.clone(),
            a: a.clone(),
            b: bb.clone(),
            prime: Some(p),
            table_row: Some(row_name(hit)),
            condition_id: f.item.clone(),
            claim: format!("local sign forced to {sign}"),
            observed: format!("table gives {w} at u = {u}"),
            fibres: vec![FibreRecord::from_breakdown(u.clone(), &bd)],
        });
    }
    Ok(())
}

/// Progressions on which the forced-sign lists are cross-checked.
pub const FORCED_CASES: &[(i64, i64, i64)] = &[
    (-7500, 6000, 60),
    (-7500, 5, 1),
    (-12, 128, 16),
    (-28812, 8, 7),
    (-972, 12, 18),
    (-12, 8, 6),
    (-12, 40, 14),
];

/// Runs every registered cross-check and returns the sorted ledger.
pub fn run_paper_examples() -> Result<DiscrepancyLedger> {
    let mut led = DiscrepancyLedger::default();
    base_change_claim(&mut led)?;
    rank_jump_example(&mut led)?;
    l_example(&mut led, 12, 6)?;
    l_example(&mut led, 4, 2)?;
    not_from_constant(&mut led)?;
    synthetic_c3b(&mut led)?;
    // p = 1 mod 4 with nu_p(s) = 0 mod 4 and nu_p(a) odd: every reachable row is +1.
    checker_vs_enumeration(&mut led, &b(5), &b(-1875), &b(5), &b(5))?;
    for (s, a, bb) in FORCED_CASES {
        forced_signs(&mut led, &b(*s), &b(*a), &b(*bb))?;
    }
    led.normalize();
    Ok(led)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_has_pinned_records_and_is_stable() {
        let led = run_paper_examples().unwrap();
        let wash = led.of_kind(RecordKind::TableVsPaperExample).find(|r| r.s == b(-972)).unwrap();
        assert_eq!((wash.prime.clone(), wash.table_row.as_deref()), (Some(b(2)), Some("T12.8")));
        let c3b = led.of_kind(RecordKind::TheoremVsTable).find(|r| r.s == b(-3)).unwrap();
        assert_eq!(c3b.condition_id.as_deref(), Some("C3b"));
        let p5 = led.of_kind(RecordKind::TheoremVsTable).find(|r| r.s == b(-1875)).unwrap();
        assert_eq!((p5.prime.clone(), p5.condition_id.as_deref()), (Some(b(5)), None));
        assert!(led.records.iter().all(|r| r.s != b(-7500) || r.a != b(6000)));
        assert_eq!(led.to_json(), run_paper_examples().unwrap().to_json());
        let back: DiscrepancyLedger = serde_json::from_str(&led.to_json()).unwrap();
        assert_eq!(back, led);
    }
}
