use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::io::{self, Write};

use crate::global_root::WindowStats;
use crate::sign::Sign;

/// One fibre of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(with = "crate::dec::big")]
    pub u: BigInt,
    #[serde(with = "crate::dec::big")]
    pub t: BigInt,
    pub singular: bool,
    #[serde(rename = "W")]
    pub w: Option<Sign>,
    #[serde(with = "crate::dec::factor_map")]
    pub factors: Vec<(BigInt, Sign)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub plus: u64,
    pub minus: u64,
    pub singular: u64,
    #[serde(with = "crate::dec::rat")]
    pub average: BigRational,
}

impl ScanSummary {
    pub fn from_records(recs: &[OutputRecord]) -> Self {
        let mut st = WindowStats::default();
        for r in recs {
            match r.w {
                Some(Sign::Plus) => st.plus += 1,
                Some(Sign::Minus) => st.minus += 1,
                None => st.singular += 1,
            }
        }
        ScanSummary { plus: st.plus, minus: st.minus, singular: st.singular, average: st.average() }
    }
}

/// A JSON-lines scan ends with this wrapper so it can be told from a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryLine {
    pub summary: ScanSummary,
}

pub fn write_json_lines(out: &mut dyn Write, recs: &[OutputRecord]) -> io::Result<()> {
    for r in recs {
        writeln!(out, "{}", serde_json::to_string(r).expect("record serializes"))?;
    }
    let s = SummaryLine { summary: ScanSummary::from_records(recs) };
    writeln!(out, "{}", serde_json::to_string(&s).expect("summary serializes"))
}

/// Fixed columns `u,t,singular,W` then one column per prime of the union
/// factor base; a prime outside a fibre's base contributes `+1`.
pub fn write_csv(out: &mut dyn Write, recs: &[OutputRecord]) -> io::Result<()> {
    let primes: BTreeSet<&BigInt> = recs.iter().flat_map(|r| r.factors.iter().map(|(p, _)| p)).collect();
    write!(out, "u,t,singular,W")?;
    for p in &primes {
        write!(out, ",w_{p}")?;
    }
    writeln!(out)?;
    for r in recs {
        let w = r.w.map_or(String::new(), |w| w.to_i8().to_string());
        write!(out, "{},{},{},{}", r.u, r.t, r.singular, w)?;
        for p in &primes {
            if r.singular {
                write!(out, ",")?;
            } else {
                let v = r.factors.iter().find(|(q, _)| q == *p).map_or(Sign::Plus, |(_, s)| *s);
                write!(out, ",{}", v.to_i8())?;
            }
        }
        writeln!(out)?;
    }
    let s = ScanSummary::from_records(recs);
    writeln!(out, "# plus={} minus={} singular={} average={}", s.plus, s.minus, s.singular, s.average)
}
