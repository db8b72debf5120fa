use std::process::{Command, Output};

use rootno::cli::output::{OutputRecord, SummaryLine};

fn rootno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootno"))
        .args(args)
        .env_remove("ROOTNO_JOBS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn root_number_f() {
    let o = rootno(&["root-number", "--family", "f", "--s", "-972", "--t", "18"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("W = -1"), "{text}");
    assert!(text.contains("2:+1") && text.contains("3:+1"), "{text}");
}

#[test]
fn root_number_singular_and_usage() {
    let o = rootno(&["root-number", "--family", "f", "--s", "4", "--t", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular fibre"));
    assert_eq!(code(&rootno(&["root-number", "--family", "f", "--s", "4"])), 64);
    assert_eq!(code(&rootno(&["root-number", "--family", "g", "--s", "4", "--t", "1"])), 64);
    assert_eq!(code(&rootno(&["no-such-command"])), 64);
    assert_eq!(code(&rootno(&["--help"])), 0);
}

#[test]
fn root_number_l_json() {
    let o = rootno(&["root-number", "--family", "l", "--w", "7", "--s", "-588", "--v", "1", "--t", "6", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reduced_s"], "-28812");
    assert_eq!(v["reduced_t"], "259");
}

#[test]
fn check_exit_codes() {
    let o = rootno(&["check", "--s", "-7500", "--a", "6000", "--b", "60"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("Constant(+1)"));

    let o = rootno(&["check", "--s", "12", "--a", "1", "--b", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("NonConstant: s not of form -3r^2"));

    let o = rootno(&["check", "--s", "-972", "--a", "12", "--b", "18", "--json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "non_constant");
    assert!(v["witnesses"].is_object());
    assert!(v["ledger_note"].as_str().unwrap().contains("audit"));

    for bad in [["--s", "0", "--a", "1", "--b", "1"], ["--s", "-3", "--a", "0", "--b", "1"], ["--s", "-3", "--a", "1", "--b", "0"]] {
        let mut args = vec!["check"];
        args.extend(bad);
        assert_eq!(code(&rootno(&args)), 64, "{args:?}");
    }
}

const SCAN: [&str; 11] = ["scan", "--s", "-7500", "--a", "6000", "--b", "60", "--u-min", "-50", "--u-max", "50"];

#[test]
fn scan_rank_jump_window() {
    let o = rootno(&SCAN);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r.split(',').nth(3) == Some("1")));
    assert!(text.lines().last().unwrap().ends_with("average=1"));
}

#[test]
fn scan_is_independent_of_jobs() {
    let base = stdout(&rootno(&SCAN));
    for j in ["1", "4"] {
        let mut args = vec!["--jobs", j];
        args.extend(SCAN);
        assert_eq!(stdout(&rootno(&args)), base, "--jobs {j}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_rootno")).args(SCAN).env("ROOTNO_JOBS", "3").output().unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), base);
}

#[test]
fn scan_json_round_trips() {
    let o = rootno(&["scan", "--s", "-972", "--a", "12", "--b", "18", "--u-min", "0", "--u-max", "1", "--json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    let recs: Vec<OutputRecord> = lines[..2].iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs[0].w.map(|w| w.to_i8()), Some(-1));
    assert_eq!(recs[1].w.map(|w| w.to_i8()), Some(1));
    for (l, r) in lines.iter().zip(&recs) {
        assert_eq!(&serde_json::to_string(r).unwrap(), l);
    }
    let s: SummaryLine = serde_json::from_str(lines[2]).unwrap();
    assert_eq!((s.summary.plus, s.summary.minus), (1, 1));
}

#[test]
fn scan_single_and_bad_range() {
    let o = rootno(&["scan", "--s", "-3", "--a", "1", "--b", "1", "--u-min", "0", "--u-max", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().nth(1).unwrap().split(',').nth(3), Some("1"));
    let o = rootno(&["scan", "--s", "-3", "--a", "1", "--b", "1", "--u-min", "2", "--u-max", "1"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn rank_jump_report() {
    let o = rootno(&["rank-jump", "--s", "-7500", "--a", "6000", "--b", "60"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("conditional on the parity conjecture"), "{text}");
    let o = rootno(&["rank-jump", "--s", "-7500", "--a", "6000", "--b", "60", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["predicted_min_rank"], 2);
    assert_eq!(v["generic_rank"], 1);
}

#[test]
fn audit_reports_records_and_is_stable() {
    let a = rootno(&["audit", "--suite", "paper-examples"]);
    assert_eq!(code(&a), 3);
    let b = rootno(&["--jobs", "2", "audit", "--suite", "paper-examples"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let kinds: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"theorem-vs-table"));
    assert!(kinds.contains(&"table-vs-paper-example"));
}

#[test]
fn search_finds_c3a() {
    let o = rootno(&["search", "--s", "-3", "--a-max", "8", "--b-max", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.starts_with("a = 8, b = 1:")), "{}", stdout(&o));
}
