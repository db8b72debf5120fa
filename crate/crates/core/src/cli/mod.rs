//! The `rootno` command line.
//!
//! Exit codes: 0 success (or a constant verdict), 1 non-constant verdict,
//! 2 a fibre that cannot be evaluated (singular, or no table row applies),
//! 3 an audit ledger with records, 64 usage or invalid input.

pub mod output;

pub use output::{OutputRecord, ScanSummary, SummaryLine};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::io::{self, Write};

use crate::audit::{falsify_constancy, run_paper_examples, DiscrepancyLedger};
use crate::constancy::{check_f_with, TwoAdic, Verdict};
use crate::error::Error;
use crate::families::{is_singular, l_to_f_integral, Progression};
use crate::global_root::FibreEvaluator;
use crate::rankjump::rank_jump_report;
use crate::sign::Sign;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NON_CONSTANT: i32 = 1;
pub const EXIT_FIBRE: i32 = 2;
pub const EXIT_LEDGER: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Fibres per parallel batch in `scan`; output order never depends on it.
const SCAN_BATCH: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "rootno", version, about = "Root numbers of the families F_s(t) and L_{w,s,v}(t)")]
pub struct Cli {
    /// Worker threads for scan and search.
    #[arg(long, global = true, env = "ROOTNO_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Root number of one fibre with its per-prime breakdown.
    RootNumber(RootNumberArgs),
    /// Decide whether W(F_s(a u + b)) is constant in u.
    Check(CheckArgs),
    /// Root numbers over a window of u.
    Scan(ScanArgs),
    /// Generic rank, forced local signs and the predicted rank.
    RankJump(RankJumpArgs),
    /// Re-run the worked examples and print the discrepancy ledger.
    Audit(AuditArgs),
    /// Progressions (a, b) in a box on which the root number is constant.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    F,
    L,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RootNumberArgs {
    #[arg(long, value_enum, default_value = "f")]
    pub family: Family,
    #[arg(long, value_parser = parse_rat)]
    pub s: BigRational,
    #[arg(long, value_parser = parse_rat)]
    pub t: BigRational,
    #[arg(long, value_parser = parse_rat)]
    pub w: Option<BigRational>,
    #[arg(long, value_parser = parse_rat)]
    pub v: Option<BigRational>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CheckArgs {
    #[arg(long, value_parser = parse_big)]
    pub s: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub a: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub b: BigInt,
    /// Decide p = 2 with the T1 summary rows instead of the enumerated conditions.
    #[arg(long)]
    pub table1: bool,
    #[arg(long)]
    pub json: bool,
    /// Search budget for witness fibres on a non-constant verdict.
    #[arg(long, default_value_t = 1000)]
    pub budget: u64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_big)]
    pub s: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub a: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub b: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub u_min: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub u_max: BigInt,
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RankJumpArgs {
    #[arg(long, value_parser = parse_big)]
    pub s: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub a: BigInt,
    #[arg(long, value_parser = parse_big)]
    pub b: BigInt,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    PaperExamples,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, value_enum, default_value = "paper-examples")]
    pub suite: Suite,
    /// Also cross-check the tables against classical local root numbers.
    #[arg(long)]
    pub with_classical_oracle: bool,
    /// Write the ledger here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SearchArgs {
    #[arg(long, value_parser = parse_big)]
    pub s: BigInt,
    #[arg(long)]
    pub a_max: u64,
    #[arg(long)]
    pub b_max: u64,
    #[arg(long)]
    pub json: bool,
}

fn parse_big(x: &str) -> Result<BigInt, String> {
    x.parse().map_err(|_| format!("`{x}` is not an integer"))
}

fn parse_rat(x: &str) -> Result<BigRational, String> {
    x.parse().map_err(|_| format!("`{x}` is not an integer or fraction p/q"))
}

/// A failure with its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SingularFibre { .. } | Error::TableFallThrough { .. } | Error::TableOverlap { .. } => EXIT_FIBRE,
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

type CliResult = std::result::Result<i32, Fail>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs.filter(|j| *j > 0) {
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let res = pool.install(|| match cli.cmd {
        Cmd::RootNumber(a) => cmd_root_number(a, out),
        Cmd::Check(a) => cmd_check(a, out),
        Cmd::Scan(a) => cmd_scan(a, out),
        Cmd::RankJump(a) => cmd_rank_jump(a, out),
        Cmd::Audit(a) => cmd_audit(a, out),
        Cmd::Search(a) => cmd_search(a, out),
    });
    let code = match res {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = out.flush();
            let _ = writeln!(err, "error: {msg}");
            code
        }
    };
    let _ = out.flush();
    code
}

fn integral(x: &BigRational, what: &str) -> std::result::Result<BigInt, Fail> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Fail(EXIT_USAGE, format!("--{what} must be an integer for family f, got {x}")))
    }
}

/// JSON form of `root-number`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootNumberOutput {
    pub family: String,
    #[serde(with = "crate::dec::rat")]
    pub s: BigRational,
    #[serde(with = "crate::dec::rat")]
    pub t: BigRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<String>,
    /// The `F_S(T)` model actually evaluated.
    #[serde(with = "crate::dec::big")]
    pub reduced_s: BigInt,
    #[serde(with = "crate::dec::big")]
    pub reduced_t: BigInt,
    #[serde(rename = "W")]
    pub w_total: Sign,
    #[serde(with = "crate::dec::factor_map")]
    pub factors: Vec<(BigInt, Sign)>,
    /// Table row used at each prime, e.g. `T12.8`.
    pub rows: Vec<String>,
}

fn cmd_root_number(a: RootNumberArgs, out: &mut dyn Write) -> CliResult {
    let (big_s, big_t) = match a.family {
        Family::F => {
            if a.w.is_some() || a.v.is_some() {
                return Err(Fail(EXIT_USAGE, "--w and --v only apply to --family l".into()));
            }
            (integral(&a.s, "s")?, integral(&a.t, "t")?)
        }
        Family::L => {
            let (Some(w), Some(v)) = (&a.w, &a.v) else {
                return Err(Fail(EXIT_USAGE, "--family l needs --w and --v".into()));
            };
            l_to_f_integral(w, &a.s, v, &a.t)?
        }
    };
    if is_singular(&big_s, &big_t) {
        return Err(Fail(EXIT_FIBRE, format!("singular fibre (s = {big_s}, t = {big_t})")));
    }
    let (bd, hits) = FibreEvaluator::new(&big_s)?.eval_detail(&big_t)?;
    if a.json {
        let rec = RootNumberOutput {
            family: if a.family == Family::F { "f" } else { "l" }.into(),
            s: a.s.clone(),
            t: a.t.clone(),
            w: a.w.as_ref().map(|x| x.to_string()),
            v: a.v.as_ref().map(|x| x.to_string()),
            reduced_s: big_s,
            reduced_t: big_t,
            w_total: bd.total,
            factors: bd.factors.clone(),
            rows: hits.iter().map(|h| format!("{}.{}", h.table, h.ordinal)).collect(),
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("serializes"))?;
        return Ok(EXIT_OK);
    }
    if a.family == Family::L {
        writeln!(out, "reduced model: F_{{{big_s}}}({big_t})")?;
    }
    writeln!(out, "W = {}", bd.total)?;
    let fs: Vec<String> = bd.factors.iter().map(|(p, s)| format!("{p}:{s}")).collect();
    writeln!(out, "factors: {}", fs.join(" "))?;
    for h in &hits {
        writeln!(out, "  {h}")?;
    }
    Ok(EXIT_OK)
}

/// JSON form of `check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutput {
    #[serde(with = "crate::dec::big")]
    pub s: BigInt,
    #[serde(with = "crate::dec::big")]
    pub a: BigInt,
    #[serde(with = "crate::dec::big")]
    pub b: BigInt,
    pub encoding: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Set when the progression has a record in the audit ledger.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ledger_note: Option<String>,
}

fn ledger_note(s: &BigInt, a: &BigInt, b: &BigInt) -> std::result::Result<Option<String>, Fail> {
    let led = run_paper_examples()?;
    let kinds: Vec<String> = led
        .records
        .iter()
        .filter(|r| &r.s == s && &r.a == a && &r.b == b && r.family.starts_with("F_"))
        .map(|r| r.kind.to_string())
        .collect();
    Ok((!kinds.is_empty()).then(|| {
        format!("this progression has audit ledger records ({}); see `rootno audit --suite paper-examples`", kinds.join(", "))
    }))
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> CliResult {
    for (x, n) in [(&a.s, "s"), (&a.a, "a"), (&a.b, "b")] {
        if x.is_zero() {
            return Err(Fail(EXIT_USAGE, format!("--{n} must be nonzero")));
        }
    }
    let enc = if a.table1 { TwoAdic::Table1 } else { TwoAdic::Conditions };
    let mut verdict = check_f_with(&a.s, &a.a, &a.b, enc)?;
    if let Verdict::NonConstant { witnesses, .. } = &mut verdict {
        *witnesses = falsify_constancy(&a.s, &a.a, &a.b, a.budget)?;
    }
    let note = ledger_note(&a.s, &a.a, &a.b)?;
    let code = if verdict.is_constant() { EXIT_OK } else { EXIT_NON_CONSTANT };
    if a.json {
        let rec = CheckOutput {
            s: a.s,
            a: a.a,
            b: a.b,
            encoding: if a.table1 { "table1" } else { "conditions" }.into(),
            verdict,
            ledger_note: note,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("serializes"))?;
        return Ok(code);
    }
    writeln!(out, "{verdict}")?;
    if let Some(n) = note {
        writeln!(out, "note: {n}")?;
    }
    Ok(code)
}

fn scan_records(ev: &FibreEvaluator, prog: &Progression, us: &[BigInt]) -> std::result::Result<Vec<OutputRecord>, Fail> {
    us.par_iter()
        .map(|u| {
            let t = prog.at(u);
            match ev.eval(&t) {
                Ok(bd) => Ok(OutputRecord { u: u.clone(), t, singular: false, w: Some(bd.total), factors: bd.factors }),
                Err(Error::SingularFibre { .. }) => {
                    Ok(OutputRecord { u: u.clone(), t, singular: true, w: None, factors: vec![] })
                }
                Err(e) => Err(Fail::from(e)),
            }
        })
        .collect()
}

fn cmd_scan(a: ScanArgs, out: &mut dyn Write) -> CliResult {
    if a.u_min > a.u_max {
        return Err(Fail(EXIT_USAGE, format!("--u-min {} exceeds --u-max {}", a.u_min, a.u_max)));
    }
    if a.a.is_zero() {
        return Err(Fail(EXIT_USAGE, "--a must be nonzero".into()));
    }
    let ev = FibreEvaluator::new(&a.s)?;
    let prog = Progression { a: a.a.clone(), b: a.b.clone() };
    let mut recs = Vec::new();
    let mut u = a.u_min.clone();
    while u <= a.u_max {
        let mut batch = Vec::with_capacity(SCAN_BATCH);
        while batch.len() < SCAN_BATCH && u <= a.u_max {
            batch.push(u.clone());
            u += BigInt::one();
        }
        recs.extend(scan_records(&ev, &prog, &batch)?);
    }
    if a.json {
        output::write_json_lines(out, &recs)?;
    } else {
        output::write_csv(out, &recs)?;
    }
    Ok(EXIT_OK)
}

fn cmd_rank_jump(a: RankJumpArgs, out: &mut dyn Write) -> CliResult {
    let r = rank_jump_report(&a.s, &a.a, &a.b)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializes"))?;
    } else {
        writeln!(out, "{r}")?;
    }
    Ok(EXIT_OK)
}

#[cfg(feature = "classical-oracle")]
fn classical_records() -> std::result::Result<DiscrepancyLedger, Fail> {
    // A fixed spread of fibres: several s of both special forms and generic
    // ones, t running through a short window.
    let ss = [-3i64, -12, -27, -75, -108, -300, -972, -7500, -28812, 5, 7, -11, 20, -44];
    let mut fibres = Vec::new();
    for (i, s) in ss.iter().enumerate() {
        for k in 0..8i64 {
            let t = BigInt::from(k * 7 - 20 + i as i64);
            let s = BigInt::from(*s);
            if !is_singular(&s, &t) {
                fibres.push((s, t));
            }
        }
    }
    fibres.truncate(100);
    Ok(crate::audit::classical::classical_ledger(&fibres)?)
}

#[cfg(not(feature = "classical-oracle"))]
fn classical_records() -> std::result::Result<DiscrepancyLedger, Fail> {
    Err(Fail(EXIT_USAGE, "the classical oracle needs a build with --features classical-oracle".into()))
}

fn cmd_audit(a: AuditArgs, out: &mut dyn Write) -> CliResult {
    let mut led = match a.suite {
        Suite::PaperExamples => run_paper_examples()?,
    };
    if a.with_classical_oracle {
        led.records.extend(classical_records()?.records);
        led.normalize();
    }
    let json = led.to_json();
    match &a.out {
        Some(path) => std::fs::write(path, format!("{json}\n"))?,
        None => writeln!(out, "{json}")?,
    }
    Ok(if led.is_empty() { EXIT_OK } else { EXIT_LEDGER })
}

/// One hit of `search`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    #[serde(with = "crate::dec::big")]
    pub a: BigInt,
    #[serde(with = "crate::dec::big")]
    pub b: BigInt,
    #[serde(rename = "W")]
    pub w: Sign,
    pub matched: Vec<String>,
}

fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> CliResult {
    if a.s.is_zero() {
        return Err(Fail(EXIT_USAGE, "--s must be nonzero".into()));
    }
    for ai in 1..=a.a_max {
        let row: Vec<SearchHit> = (1..=a.b_max)
            .into_par_iter()
            .map(|bi| -> std::result::Result<Option<SearchHit>, Fail> {
                let (aa, bb) = (BigInt::from(ai), BigInt::from(bi));
                Ok(match check_f_with(&a.s, &aa, &bb, TwoAdic::Conditions)? {
                    Verdict::Constant { sign, matched } => Some(SearchHit {
                        a: aa,
                        b: bb,
                        w: sign,
                        matched: matched.iter().map(|m| m.to_string()).collect(),
                    }),
                    Verdict::NonConstant { .. } => None,
                })
            })
            .collect::<std::result::Result<Vec<_>, Fail>>()?
            .into_iter()
            .flatten()
            .collect();
        for h in row {
            if a.json {
                writeln!(out, "{}", serde_json::to_string(&h).expect("serializes"))?;
            } else {
                writeln!(out, "a = {}, b = {}: Constant({}) [{}]", h.a, h.b, h.w, h.matched.join("; "))?;
            }
        }
        out.flush()?;
    }
    Ok(EXIT_OK)
}
