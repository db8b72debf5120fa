//! Parser and evaluator for the row-format table data.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::cmp::Ordering;

use super::{LocalProfile, RES_MOD};
use crate::arithmetic::legendre_unchecked;
use crate::error::{Error, Result};
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeClass {
    AtLeastFive,
    Three,
    Two,
}

impl PrimeClass {
    pub fn of(p: &BigInt) -> PrimeClass {
        match p.to_u64() {
            Some(2) => PrimeClass::Two,
            Some(3) => PrimeClass::Three,
            _ => PrimeClass::AtLeastFive,
        }
    }
}

/// Integers extended by both infinities (a valuation of zero is `+inf`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Feature {
    Vs,
    Vt,
    Vtts,
    VsMinus2Vt,
    TwoVtMinusVs,
    VttsMinus2Vt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    S,
    T,
    Tts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lhs {
    Feature(Feature),
    Units(Vec<Unit>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CmpOp {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Alt {
    Const(i64),
    Unit { neg: bool, unit: Unit, offset: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Atom {
    Cmp { feat: Feature, op: CmpOp, rhs: i64 },
    Set { feat: Feature, negate: bool, values: Vec<i64> },
    Residue { lhs: Lhs, negate: bool, alts: Vec<Alt>, modulus: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guard {
    atoms: Vec<Atom>,
    otherwise: bool,
    text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Const(Sign),
    Leg { neg: bool, coeff: i64, units: Vec<Unit> },
    Mod4 { neg: bool, units: Vec<Unit> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub ordinal: u32,
    guard: Guard,
    value: Value,
    value_text: String,
}

impl Row {
    pub fn guard_text(&self) -> &str {
        &self.guard.text
    }

    pub fn value_text(&self) -> &str {
        &self.value_text
    }

    pub fn is_otherwise(&self) -> bool {
        self.guard.otherwise
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub id: String,
    pub class: PrimeClass,
    selector: Guard,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn selector_text(&self) -> &str {
        &self.selector.text
    }
}

/// A complete set of tables, possibly with an errata overlay applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSet {
    pub tables: Vec<Table>,
}

/// The row that produced a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowHit {
    pub table: String,
    pub ordinal: u32,
    pub guard: String,
    pub sign: Sign,
}

impl std::fmt::Display for RowHit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{} [{}]", self.table, self.ordinal, self.guard)
    }
}

fn data_err(line: usize, msg: impl Into<String>) -> Error {
    Error::TableData { line, msg: msg.into() }
}

fn parse_feature(s: &str) -> Option<Feature> {
    Some(match s {
        "vs" => Feature::Vs,
        "vt" => Feature::Vt,
        "vtts" => Feature::Vtts,
        "vs-2vt" => Feature::VsMinus2Vt,
        "2vt-vs" => Feature::TwoVtMinusVs,
        "vtts-2vt" => Feature::VttsMinus2Vt,
        _ => return None,
    })
}

fn parse_unit(s: &str) -> Option<Unit> {
    Some(match s {
        "s_p" => Unit::S,
        "t_p" => Unit::T,
        "tts_p" => Unit::Tts,
        _ => return None,
    })
}

fn parse_units(s: &str, line: usize) -> Result<Vec<Unit>> {
    s.split('*')
        .map(|u| parse_unit(u.trim()).ok_or_else(|| data_err(line, format!("unknown unit `{u}`"))))
        .collect()
}

fn parse_int(s: &str, line: usize) -> Result<i64> {
    s.trim()
        .trim_start_matches('+')
        .parse()
        .map_err(|_| data_err(line, format!("expected an integer, got `{s}`")))
}

fn parse_alt(s: &str, line: usize) -> Result<Alt> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if rest.starts_with(|c: char| c.is_ascii_alphabetic()) => (true, rest),
        _ => (false, s),
    };
    if body.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
        return Ok(Alt::Const(parse_int(body, line)?));
    }
    let (name, offset) = match body.split_once('+') {
        Some((n, k)) => (n, parse_int(k, line)?),
        None => (body, 0),
    };
    let unit = parse_unit(name).ok_or_else(|| data_err(line, format!("unknown unit `{name}`")))?;
    Ok(Alt::Unit { neg, unit, offset })
}

fn parse_atom(text: &str, line: usize) -> Result<Option<Atom>> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks == ["otherwise"] {
        return Ok(None);
    }
    if toks.len() < 3 {
        return Err(data_err(line, format!("malformed atom `{text}`")));
    }
    let lhs_text = toks[0];
    let op = toks[1];
    let rhs = toks[2..].join(" ");
    let lhs = match parse_feature(lhs_text) {
        Some(f) => Lhs::Feature(f),
        None => Lhs::Units(parse_units(lhs_text, line)?),
    };
    if op == "in" || op == "notin" {
        let Lhs::Feature(feat) = lhs else {
            return Err(data_err(line, "set membership needs a valuation feature"));
        };
        let inner = rhs
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| data_err(line, format!("expected {{..}} in `{text}`")))?;
        let values = inner.split(',').map(|v| parse_int(v, line)).collect::<Result<_>>()?;
        return Ok(Some(Atom::Set { feat, negate: op == "notin", values }));
    }
    if let Some((alts, m)) = rhs.rsplit_once(" mod ") {
        let negate = match op {
            "=" => false,
            "!=" => true,
            _ => return Err(data_err(line, format!("residue atoms take = or !=, got `{op}`"))),
        };
        let modulus = parse_int(m, line)?;
        if modulus <= 0 || (matches!(lhs, Lhs::Units(_)) && RES_MOD % modulus != 0) {
            return Err(data_err(line, format!("unsupported unit modulus {modulus}")));
        }
        let alts: Vec<Alt> = alts.split(',').map(|a| parse_alt(a, line)).collect::<Result<_>>()?;
        if matches!(lhs, Lhs::Feature(_)) && alts.iter().any(|a| !matches!(a, Alt::Const(_))) {
            return Err(data_err(line, "valuation residues take integer alternatives"));
        }
        return Ok(Some(Atom::Residue { lhs, negate, alts, modulus }));
    }
    let Lhs::Feature(feat) = lhs else {
        return Err(data_err(line, format!("unit atoms need `mod m`: `{text}`")));
    };
    let op = match op {
        "<" => CmpOp::Lt,
        "<=" => CmpOp::Le,
        "=" => CmpOp::Eq,
        "!=" => CmpOp::Ne,
        ">" => CmpOp::Gt,
        ">=" => CmpOp::Ge,
        _ => return Err(data_err(line, format!("unknown operator `{op}`"))),
    };
    Ok(Some(Atom::Cmp { feat, op, rhs: parse_int(&rhs, line)? }))
}

fn parse_guard(text: &str, line: usize) -> Result<Guard> {
    let text = text.trim();
    let mut atoms = Vec::new();
    let mut otherwise = false;
    if text != "all" {
        for part in text.split('&') {
            match parse_atom(part.trim(), line)? {
                Some(a) => atoms.push(a),
                None => otherwise = true,
            }
        }
    }
    Ok(Guard { atoms, otherwise, text: text.to_string() })
}

fn parse_value(text: &str, class: PrimeClass, line: usize) -> Result<Value> {
    let text = text.trim();
    match text {
        "+1" | "1" => return Ok(Value::Const(Sign::Plus)),
        "-1" => return Ok(Value::Const(Sign::Minus)),
        _ => {}
    }
    let (neg, body) = match text.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, text),
    };
    let inner = |prefix: &str| -> Option<&str> { body.strip_prefix(prefix)?.strip_suffix(')') };
    if let Some(arg) = inner("leg(") {
        if class == PrimeClass::Two {
            return Err(data_err(line, "Legendre symbols are not defined at p = 2"));
        }
        let mut coeff = 1i64;
        let mut units = Vec::new();
        for factor in arg.split('*') {
            let f = factor.trim();
            match parse_unit(f) {
                Some(u) => units.push(u),
                None => coeff *= parse_int(f, line)?,
            }
        }
        return Ok(Value::Leg { neg, coeff, units });
    }
    if let Some(arg) = inner("mod4(") {
        return Ok(Value::Mod4 { neg, units: parse_units(arg, line)? });
    }
    Err(data_err(line, format!("unknown value expression `{text}`")))
}

fn parse_class(s: &str, line: usize) -> Result<PrimeClass> {
    match s.trim() {
        "p>=5" => Ok(PrimeClass::AtLeastFive),
        "p=3" => Ok(PrimeClass::Three),
        "p=2" => Ok(PrimeClass::Two),
        other => Err(data_err(line, format!("unknown prime class `{other}`"))),
    }
}

fn parse_row(fields: &[&str], class: PrimeClass, line: usize) -> Result<Row> {
    let ordinal = fields[1]
        .trim()
        .parse()
        .map_err(|_| data_err(line, format!("bad ordinal `{}`", fields[1])))?;
    Ok(Row {
        ordinal,
        guard: parse_guard(fields[2], line)?,
        value: parse_value(fields[3], class, line)?,
        value_text: fields[3].trim().to_string(),
    })
}

fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

impl TableSet {
    pub fn parse(text: &str) -> Result<TableSet> {
        let mut tables: Vec<Table> = Vec::new();
        for (line, l) in records(text) {
            let fields: Vec<&str> = l.split('|').collect();
            if let Some(head) = fields[0].strip_prefix("@table") {
                if fields.len() != 3 {
                    return Err(data_err(line, "table header needs id | class | selector"));
                }
                let id = head.trim().to_string();
                if tables.iter().any(|t| t.id == id) {
                    return Err(data_err(line, format!("duplicate table {id}")));
                }
                let class = parse_class(fields[1], line)?;
                tables.push(Table { id, class, selector: parse_guard(fields[2], line)?, rows: Vec::new() });
                continue;
            }
            if fields.len() != 4 {
                return Err(data_err(line, "row needs id | ordinal | guard | value"));
            }
            let id = fields[0].trim();
            let table = tables
                .iter_mut()
                .find(|t| t.id == id)
                .ok_or_else(|| data_err(line, format!("row for undeclared table {id}")))?;
            let row = parse_row(&fields, table.class, line)?;
            if table.rows.iter().any(|r| r.ordinal == row.ordinal) {
                return Err(data_err(line, format!("duplicate row {id}.{}", row.ordinal)));
            }
            table.rows.push(row);
        }
        Ok(TableSet { tables })
    }

    /// Replace (or add) rows from an overlay in the same row format.
    pub fn with_overlay(&self, overlay: &str) -> Result<TableSet> {
        let mut out = self.clone();
        for (line, l) in records(overlay) {
            let fields: Vec<&str> = l.split('|').collect();
            if fields.len() != 4 {
                return Err(data_err(line, "overlay row needs id | ordinal | guard | value"));
            }
            let id = fields[0].trim();
            let table = out
                .tables
                .iter_mut()
                .find(|t| t.id == id)
                .ok_or_else(|| data_err(line, format!("overlay names unknown table {id}")))?;
            let row = parse_row(&fields, table.class, line)?;
            match table.rows.iter_mut().find(|r| r.ordinal == row.ordinal) {
                Some(slot) => *slot = row,
                None => table.rows.push(row),
            }
        }
        Ok(out)
    }

    pub fn table(&self, id: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.id == id)
    }

    /// Evaluate `w_p*` on a profile, reporting the row that fired.
    pub fn evaluate(&self, prof: &LocalProfile) -> Result<RowHit> {
        let ctx = Ctx::new(prof);
        let class = PrimeClass::of(&prof.p);
        let candidates: Vec<&Table> = self
            .tables
            .iter()
            .filter(|t| t.class == class && ctx.guard_holds(&t.selector))
            .collect();
        let table = match candidates.as_slice() {
            [t] => *t,
            [] => return Err(prof.fall_through("<selection>")),
            many => {
                return Err(Error::TableOverlap {
                    table: many.iter().map(|t| t.id.as_str()).collect::<Vec<_>>().join(","),
                    rows: vec![],
                    p: prof.p.clone(),
                    s: prof.s.clone(),
                    t: prof.t.clone(),
                })
            }
        };
        let row = select_row(table, &ctx, prof)?;
        let sign = ctx.value(&row.value).ok_or_else(|| prof.fall_through(&table.id))?;
        Ok(RowHit { table: table.id.clone(), ordinal: row.ordinal, guard: row.guard.text.clone(), sign })
    }

    /// Every row of the selected table whose guard holds, ignoring the
    /// `otherwise` rule. Used by the totality checks.
    pub fn matching_rows(&self, prof: &LocalProfile) -> Vec<(String, u32, bool)> {
        let ctx = Ctx::new(prof);
        let class = PrimeClass::of(&prof.p);
        let mut out = Vec::new();
        for t in self.tables.iter().filter(|t| t.class == class && ctx.guard_holds(&t.selector)) {
            for r in &t.rows {
                if ctx.atoms_hold(&r.guard.atoms) {
                    out.push((t.id.clone(), r.ordinal, r.guard.otherwise));
                }
            }
        }
        out
    }
}

fn select_row<'a>(table: &'a Table, ctx: &Ctx, prof: &LocalProfile) -> Result<&'a Row> {
    let ordinary: Vec<&Row> = table
        .rows
        .iter()
        .filter(|r| !r.guard.otherwise && ctx.atoms_hold(&r.guard.atoms))
        .collect();
    let pool = if ordinary.is_empty() {
        table
            .rows
            .iter()
            .filter(|r| r.guard.otherwise && ctx.atoms_hold(&r.guard.atoms))
            .collect()
    } else {
        ordinary
    };
    match pool.as_slice() {
        [r] => Ok(r),
        [] => Err(prof.fall_through(&table.id)),
        many => Err(Error::TableOverlap {
            table: table.id.clone(),
            rows: many.iter().map(|r| r.ordinal).collect(),
            p: prof.p.clone(),
            s: prof.s.clone(),
            t: prof.t.clone(),
        }),
    }
}

struct Ctx<'a> {
    prof: &'a LocalProfile,
    vs: ExtInt,
    vt: ExtInt,
    vtts: ExtInt,
}

fn ext_sub(a: ExtInt, b: ExtInt) -> ExtInt {
    match (a, b) {
        (ExtInt::Fin(x), ExtInt::Fin(y)) => ExtInt::Fin(x - y),
        (ExtInt::PosInf, _) | (_, ExtInt::NegInf) => ExtInt::PosInf,
        _ => ExtInt::NegInf,
    }
}

fn ext_double(a: ExtInt) -> ExtInt {
    match a {
        ExtInt::Fin(x) => ExtInt::Fin(2 * x),
        other => other,
    }
}

impl<'a> Ctx<'a> {
    fn new(prof: &'a LocalProfile) -> Self {
        Ctx {
            prof,
            vs: ExtInt::Fin(prof.nu_s),
            vt: match prof.nu_t.finite() {
                Some(v) => ExtInt::Fin(v),
                None => ExtInt::PosInf,
            },
            vtts: ExtInt::Fin(prof.nu_tts),
        }
    }

    fn feature(&self, f: Feature) -> ExtInt {
        match f {
            Feature::Vs => self.vs,
            Feature::Vt => self.vt,
            Feature::Vtts => self.vtts,
            Feature::VsMinus2Vt => ext_sub(self.vs, ext_double(self.vt)),
            Feature::TwoVtMinusVs => ext_sub(ext_double(self.vt), self.vs),
            Feature::VttsMinus2Vt => ext_sub(self.vtts, ext_double(self.vt)),
        }
    }

    fn unit(&self, u: Unit) -> Option<&BigInt> {
        match u {
            Unit::S => Some(&self.prof.s_unit),
            Unit::T => self.prof.t_unit.as_ref(),
            Unit::Tts => Some(&self.prof.tts_unit),
        }
    }

    fn unit_product(&self, units: &[Unit]) -> Option<BigInt> {
        let mut acc = BigInt::from(1);
        for u in units {
            acc *= self.unit(*u)?;
        }
        Some(acc)
    }

    /// Residue of a unit product mod 144; every unit modulus in the data divides 144.
    fn unit_residue(&self, units: &[Unit]) -> Option<i64> {
        let r = &self.prof.residues;
        let mut acc = 1i64;
        for u in units {
            let x = match u {
                Unit::S => r.s_p,
                Unit::T => r.t_p?,
                Unit::Tts => r.tts_p,
            };
            acc = acc * x % RES_MOD;
        }
        Some(acc)
    }

    fn guard_holds(&self, g: &Guard) -> bool {
        self.atoms_hold(&g.atoms)
    }

    fn atoms_hold(&self, atoms: &[Atom]) -> bool {
        atoms.iter().all(|a| self.atom(a))
    }

    fn atom(&self, a: &Atom) -> bool {
        match a {
            Atom::Cmp { feat, op, rhs } => {
                let ord = self.feature(*feat).cmp(&ExtInt::Fin(*rhs));
                match op {
                    CmpOp::Lt => ord == Ordering::Less,
                    CmpOp::Le => ord != Ordering::Greater,
                    CmpOp::Eq => ord == Ordering::Equal,
                    CmpOp::Ne => ord != Ordering::Equal,
                    CmpOp::Gt => ord == Ordering::Greater,
                    CmpOp::Ge => ord != Ordering::Less,
                }
            }
            Atom::Set { feat, negate, values } => match self.feature(*feat) {
                ExtInt::Fin(x) => values.contains(&x) != *negate,
                _ => *negate,
            },
            Atom::Residue { lhs, negate, alts, modulus } => {
                let m = *modulus;
                let x = match lhs {
                    Lhs::Feature(f) => match self.feature(*f) {
                        ExtInt::Fin(x) => x,
                        _ => return *negate,
                    },
                    Lhs::Units(us) => match self.unit_residue(us) {
                        Some(x) => x,
                        None => return false,
                    },
                };
                let x = x.rem_euclid(m);
                let mut hit = false;
                for alt in alts {
                    let r = match alt {
                        Alt::Const(c) => *c,
                        Alt::Unit { neg, unit, offset } => {
                            let Some(u) = self.unit_residue(&[*unit]) else { return false };
                            if *neg { offset - u } else { u + offset }
                        }
                    };
                    if r.rem_euclid(m) == x {
                        hit = true;
                        break;
                    }
                }
                hit != *negate
            }
        }
    }

    fn value(&self, v: &Value) -> Option<Sign> {
        let (neg, sign) = match v {
            Value::Const(s) => return Some(*s),
            Value::Leg { neg, coeff, units } => {
                let x = self.unit_product(units)? * coeff;
                (*neg, Sign::from_i8(legendre_unchecked(&x, &self.prof.p))?)
            }
            Value::Mod4 { neg, units } => {
                let sign = match self.unit_residue(units)? % 4 {
                    1 => Sign::Plus,
                    3 => Sign::Minus,
                    _ => return None,
                };
                (*neg, sign)
            }
        };
        Some(if neg { -sign } else { sign })
    }
}

impl LocalProfile {
    fn fall_through(&self, table: &str) -> Error {
        Error::TableFallThrough {
            table: table.to_string(),
            p: self.p.clone(),
            s: self.s.clone(),
            t: self.t.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms() {
        let a = parse_atom("t_p = s_p,s_p+2 mod 8", 1).unwrap().unwrap();
        assert_eq!(
            a,
            Atom::Residue {
                lhs: Lhs::Units(vec![Unit::T]),
                negate: false,
                alts: vec![
                    Alt::Unit { neg: false, unit: Unit::S, offset: 0 },
                    Alt::Unit { neg: false, unit: Unit::S, offset: 2 }
                ],
                modulus: 8
            }
        );
        let a = parse_atom("vtts-2vt notin {1,2,3,5}", 1).unwrap().unwrap();
        assert_eq!(a, Atom::Set { feat: Feature::VttsMinus2Vt, negate: true, values: vec![1, 2, 3, 5] });
        let a = parse_atom("vs-2vt <= -2", 1).unwrap().unwrap();
        assert_eq!(a, Atom::Cmp { feat: Feature::VsMinus2Vt, op: CmpOp::Le, rhs: -2 });
        assert!(parse_atom("otherwise", 1).unwrap().is_none());
        assert!(parse_atom("t_p < 3", 1).is_err());
        assert!(parse_value("leg(3*t_p)", PrimeClass::Two, 1).is_err());
    }

    #[test]
    fn rejects_malformed_data() {
        assert!(TableSet::parse("X | 1 | vs = 0 | +1").is_err());
        assert!(TableSet::parse("@table A | p=7 | all").is_err());
        let dup = "@table A | p=2 | all\nA | 1 | vs = 0 | +1\nA | 1 | vs = 1 | -1";
        assert!(TableSet::parse(dup).is_err());
    }
}
