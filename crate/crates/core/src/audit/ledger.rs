use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::global_root::RootNumberBreakdown;
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    TheoremVsTable,
    TableVsPaperExample,
    TheoremVsTable1,
    LemmaVsExample,
    /// Only produced by the classical cross-check; `a` is 0 and `b` is the fibre `t`.
    TableVsClassical,
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordKind::TheoremVsTable => "theorem-vs-table",
            RecordKind::TableVsPaperExample => "table-vs-paper-example",
            RecordKind::TheoremVsTable1 => "theorem-vs-table1",
            RecordKind::LemmaVsExample => "lemma-vs-example",
            RecordKind::TableVsClassical => "table-vs-classical",
        })
    }
}

/// One fibre backing a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreRecord {
    #[serde(with = "crate::dec::big")]
    pub u: BigInt,
    #[serde(with = "crate::dec::big")]
    pub t: BigInt,
    #[serde(rename = "W")]
    pub w: Option<Sign>,
    #[serde(with = "crate::dec::factor_map")]
    pub factors: Vec<(BigInt, Sign)>,
}

impl FibreRecord {
    pub fn from_breakdown(u: BigInt, bd: &RootNumberBreakdown) -> Self {
        FibreRecord { u, t: bd.t.clone(), w: Some(bd.total), factors: bd.factors.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub kind: RecordKind,
    pub family: String,
    #[serde(with = "crate::dec::big")]
    pub s: BigInt,
    #[serde(with = "crate::dec::big")]
    pub a: BigInt,
    #[serde(with = "crate::dec::big")]
    pub b: BigInt,
    #[serde(with = "crate::dec::big_opt", default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_row: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_id: Option<String>,
    pub claim: String,
    pub observed: String,
    pub fibres: Vec<FibreRecord>,
}

impl LedgerRecord {
    fn sort_key(&self) -> impl Ord + '_ {
        (self.kind, &self.family, &self.s, &self.a, &self.b, &self.prime, &self.condition_id, &self.table_row)
    }
}

/// Records sorted by kind then inputs, so the JSON is byte-stable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyLedger {
    pub records: Vec<LedgerRecord>,
}

impl DiscrepancyLedger {
    pub fn push(&mut self, r: LedgerRecord) {
        self.records.push(r);
    }

    pub fn normalize(&mut self) {
        self.records.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }

    pub fn of_kind(&self, k: RecordKind) -> impl Iterator<Item = &LedgerRecord> {
        self.records.iter().filter(move |r| r.kind == k)
    }
}
