//! The `thetamap` binary end to end: files, names, exit codes, determinism.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thetamap"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thetamap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn construct_prints_gram_json() {
    let (code, out, _) = run(&["construct", "A2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"n\":2,\"gram\":[[\"1\",\"1/2\"],[\"1/2\",\"1\"]]}\n");
}

#[test]
fn theta11_both_routes_on_gaussian() {
    let (code, out, err) = run(&["theta11", "--route", "both", "A1^2", "--bound", "10"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "# bound=10\n# bound=10\nAGREE\n");
}

#[test]
fn classify2_from_file() {
    let f = scratch("diag12.json", r#"{"n":2,"gram":[["1","0"],["0","2"]]}"#);
    let (code, out, _) = run(&["classify2", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("rank2: DEGENERATE(i); reduced=[[1,0],[0,2]]; tau="), "{out}");
}

#[test]
fn dtheta_with_direction_file() {
    let b = scratch("dir.json", r#"{"n":2,"gram":[["1","0"],["0","-1"]]}"#);
    let (code, out, err) = run(&["dtheta", "A1^2", "--direction", b.to_str().unwrap(), "--bound", "5"]);
    assert_eq!(code, 0, "{err}");
    // x² − y² sums to zero over every shell of Z².
    assert_eq!(out, "# bound=5\n");
}

#[test]
fn series_output_parses_back() {
    let (code, out, _) = run(&["theta", "E8", "--bound", "4"]);
    assert_eq!(code, 0);
    let s = thetamap::QSeries::parse(&out).unwrap();
    assert_eq!(s.render(), out);
    assert_eq!(s.coeff(&thetamap::rational::int(2)), thetamap::rational::int(240));
}

#[test]
fn wronskian_and_compare_and_spectrum() {
    let f = scratch("g315.json", r#"{"n":2,"gram":[["3","1"],["1","5"]]}"#);
    let p = f.to_str().unwrap();
    let (code, out, _) = run(&["wronskian", p, "--bound", "16"]);
    assert_eq!(code, 0);
    assert_eq!(out, "# bound=16\n16\t224\n");
    let (code, out, _) = run(&["compare", p, p, "--bound", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out, "theta: EQUAL\ntheta11: EQUAL\n");
    let (code, out, _) = run(&["spectrum", p, "--bound", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3:2\n5:2\n");
}

#[test]
fn input_errors() {
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());

    let bad = scratch("notpd.json", r#"{"n":2,"gram":[["1","2"],["2","1"]]}"#);
    let (code, _, err) = run(&["theta", bad.to_str().unwrap(), "--bound", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("leading principal minor of order 2"), "{err}");

    let junk = scratch("junk.json", "{not json");
    assert_eq!(run(&["theta", junk.to_str().unwrap(), "--bound", "3"]).0, 1);
    assert_eq!(run(&["theta", "A2", "--bound", "0.5"]).0, 1);
    assert_eq!(run(&["compare", "A2", "A3", "--bound", "2"]).0, 1);
}

#[test]
fn default_bound_warns_on_stderr() {
    let (code, out, err) = run(&["theta11", "A2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "# bound=10\n");
    assert!(err.contains("warning"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["theta11", "D4", "--bound", "6"];
    let one = bin().args(args).env("THETA_THREADS", "1").output().unwrap();
    let many = bin().args(args).env("THETA_THREADS", "0").output().unwrap();
    let again = bin().args(args).env("THETA_THREADS", "3").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, again.stdout);
}
