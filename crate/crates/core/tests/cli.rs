//! End-to-end runs of the `nilgood` binary.

use std::path::Path;
use std::process::{Command, Output};

use nilgood::lie::{ClassicalType, Family};
use nilgood::nilpotent::{enumerate_partitions, OrbitLabel};
use nilgood::report::{report_from_json, to_json, ScanOutcome, ScanReport};

fn nilgood(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgood"))
        .args(args)
        .env_remove("NILGOOD_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn good_orbit_exits_zero() {
    let o = nilgood(&[
        "check",
        "--type",
        "A",
        "--rank",
        "1",
        "--partition",
        "2",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report_from_json(&stdout(&o)).unwrap();
    assert_eq!(r.degrees, vec![1]);
    assert_eq!(r.verdict.to_string(), "GoodCertified");
}

#[test]
fn zero_orbit_of_sl2() {
    let o = nilgood(&[
        "check",
        "--type",
        "A",
        "--rank",
        "1",
        "--partition",
        "1,1",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report_from_json(&stdout(&o)).unwrap();
    assert_eq!(r.degrees, vec![2]);
}

#[test]
fn standard_failure_without_search_exits_eleven() {
    let o = nilgood(&[
        "check",
        "--type",
        "B",
        "--rank",
        "3",
        "--partition",
        "2,2,1,1,1",
        "--search-budget",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(11));
    assert!(stdout(&o).contains("verdict: NotCertifiedStandard"));
}

#[test]
fn so12_counterexample_exits_ten() {
    let o = nilgood(&[
        "check",
        "--type",
        "D",
        "--rank",
        "6",
        "--partition",
        "5,3,2,2",
        "--time-budget",
        "1800",
    ]);
    assert_eq!(o.status.code(), Some(10));
    assert!(stdout(&o).contains("verdict: LikelyNotGood(32)"));
}

#[test]
fn input_errors_exit_two() {
    let o = nilgood(&["check", "--type", "C", "--rank", "2", "--partition", "3,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("every odd part must have even multiplicity"));

    let o = nilgood(&["check", "--type", "A", "--rank", "2", "--partition", "2,2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = nilgood(&["check", "--type", "A", "--rank", "9", "--partition", "2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = nilgood(&["check", "--type", "Q", "--rank", "2", "--partition", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = nilgood(&["check", "--type", "A", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn time_budget_exits_four() {
    let o = nilgood(&[
        "check",
        "--type",
        "C",
        "--rank",
        "4",
        "--partition",
        "1,1,1,1,1,1,1,1",
        "--time-budget",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("time budget"));
}

#[test]
fn human_report_shows_bound_line() {
    let o = nilgood(&["check", "--type", "A", "--rank", "3", "--partition", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bound = (dim g^e + ℓ)/2 = 5"), "{text}");
    assert!(text.contains("Slodowy 2d_i"));
}

#[test]
fn explain_adds_reasoning() {
    let o = nilgood(&["explain", "--type", "A", "--rank", "2", "--partition", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("why:"));
    assert!(text.contains("verdict GoodCertified"));
}

#[test]
fn orbit_list_matches_enumeration() {
    for (family, letter, l) in [
        (Family::C, "C", 3),
        (Family::D, "D", 4),
        (Family::B, "B", 3),
    ] {
        let o = nilgood(&[
            "orbit-list",
            "--type",
            letter,
            "--rank",
            &l.to_string(),
            "--output",
            "json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let listed: Vec<OrbitLabel> = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(
            listed,
            enumerate_partitions(ClassicalType::new(family, l).unwrap())
        );

        let o = nilgood(&["orbit-list", "--type", letter, "--rank", &l.to_string()]);
        let lines: Vec<String> = stdout(&o)
            .lines()
            .map(|s| s.split(' ').next().unwrap().to_string())
            .collect();
        let want: Vec<String> = listed.iter().map(|o| o.partition.to_string()).collect();
        assert_eq!(lines, want);
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    let o = nilgood(&[
        "check",
        "--type",
        "C",
        "--rank",
        "2",
        "--partition",
        "2,2",
        "--output",
        "json",
        "--polynomials",
    ]);
    let text = stdout(&o);
    let r = report_from_json(&text).unwrap();
    assert_eq!(to_json(&r).unwrap(), text);
    assert!(r.polynomials.is_some());
    assert!(r.diagnostics.is_none());
}

#[test]
fn scans_of_small_algebras() {
    let o = nilgood(&["scan", "--type", "A", "--rank", "2", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let s: ScanReport = serde_json::from_str(&stdout(&o)).unwrap();
    let parts: Vec<&str> = s.rows.iter().map(|r| r.partition.as_str()).collect();
    assert_eq!(parts, ["3", "2,1", "1,1,1"]);
    assert_eq!(s.summary.good_certified, 3);

    let o = nilgood(&["scan", "--type", "C", "--rank", "2", "--output", "json"]);
    let s: ScanReport = serde_json::from_str(&stdout(&o)).unwrap();
    let parts: Vec<&str> = s.rows.iter().map(|r| r.partition.as_str()).collect();
    assert_eq!(parts, ["4", "2,2", "2,1,1", "1,1,1,1"]);
    let m = &s.summary;
    assert_eq!(
        m.good_certified + m.not_certified_standard + m.likely_not_good + m.skipped + m.errors,
        s.rows.len()
    );
    assert!(s
        .rows
        .iter()
        .all(|r| matches!(r.outcome, ScanOutcome::Done { .. })));
}

#[test]
fn scan_marks_budget_overruns_as_skipped() {
    let o = nilgood(&[
        "scan",
        "--type",
        "C",
        "--rank",
        "4",
        "--time-budget",
        "1",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s: ScanReport = serde_json::from_str(&stdout(&o)).unwrap();
    let zero = s.rows.last().unwrap();
    assert_eq!(zero.partition, "1,1,1,1,1,1,1,1");
    assert!(matches!(zero.outcome, ScanOutcome::Skipped { .. }));
    assert!(s.summary.skipped >= 1);
}

fn cached_check(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "check",
        "--type",
        "B",
        "--rank",
        "2",
        "--partition",
        "2,2,1",
        "--output",
        "json",
        "--polynomials",
        "--cache-dir",
    ];
    args.push(dir.to_str().unwrap());
    args.extend_from_slice(extra);
    nilgood(&args)
}

#[test]
fn cache_hit_reproduces_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cold = nilgood(&[
        "check",
        "--type",
        "B",
        "--rank",
        "2",
        "--partition",
        "2,2,1",
        "--output",
        "json",
        "--polynomials",
    ]);
    let first = cached_check(dir.path(), &[]);
    let second = cached_check(dir.path(), &[]);
    assert_eq!(stdout(&cold), stdout(&first));
    assert_eq!(stdout(&first), stdout(&second));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);

    let diag = cached_check(dir.path(), &["--diagnostics"]);
    let r = report_from_json(&stdout(&diag)).unwrap();
    assert!(r.diagnostics.unwrap().cache_hit);

    let bypass = cached_check(dir.path(), &["--diagnostics", "--no-cache"]);
    let r = report_from_json(&stdout(&bypass)).unwrap();
    assert!(!r.diagnostics.unwrap().cache_hit);
}
