use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symdesign"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().expect("spawn");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn u1_three_qubits_single_site() {
    let v = json(&run(&["--format", "json", "tmax", "--group", "u1", "--n", "3", "--k", "1"]));
    assert_eq!(v["tmax"].to_string(), "2");
    assert_eq!(v["proven_exact"], Value::Bool(true));
    assert_eq!(v["agrees"], Value::Bool(true));
    let cert: Vec<&str> = v["certificate"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(cert, ["w=0: +2", "w=1: -1", "w=3: +1"]);
}

#[test]
fn json_key_set() {
    let v = json(&run(&["--format", "json", "tmax", "--group", "su2", "--n", "8", "--k", "2"]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let mut want =
        vec!["group", "n", "k", "tmax", "lower_bound", "certificate", "proven_exact", "closed_form", "agrees", "ms"];
    want.sort();
    assert_eq!(keys, want);
}

#[test]
fn universal_case_prints_infinity() {
    for format in ["json", "csv", "text"] {
        let out = run(&["--format", format, "tmax", "--group", "zp", "--p", "3", "--n", "6", "--k", "3"]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains("infinity"), "{format}: {}", stdout(&out));
    }
    let v = json(&run(&["--format", "json", "tmax", "--group", "zp", "--p", "3", "--n", "6", "--k", "3"]));
    assert_eq!(v["tmax"], Value::String("infinity".into()));
}

#[test]
fn sud_two_local_needs_override() {
    let out = run(&["tmax", "--group", "sud", "--d", "3", "--n", "15", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&run(&[
        "--format",
        "json",
        "tmax",
        "--group",
        "sud",
        "--d",
        "3",
        "--n",
        "15",
        "--k",
        "2",
        "--classes",
        "(1),(12)",
        "--assume-semiuniversal",
    ]));
    assert_eq!(v["tmax"].to_string(), "103");
    assert_eq!(v["agrees"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["tmax", "--group", "zp", "--n", "4", "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["tmax", "--group", "u1", "--n", "3", "--k", "4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn custom_problem() {
    let out = run_stdin(&["--format", "json", "custom", "-"], r#"{"m":[4,4]}"#);
    let v = json(&out);
    assert_eq!(v["tmax"].to_string(), "3");
    let out = run_stdin(&["--format", "json", "custom", "-"], r#"{"m":[1,2,1],"rows":[["1/2","0","-1/2"]]}"#);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_json_exit_3() {
    let out = run_stdin(&["custom", "-"], "{\"m\":[4,4],\n\"rows\":[}");
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    let out = run_stdin(&["custom", "-"], r#"{"m":[4,4],"bogus":1}"#);
    assert_eq!(out.status.code(), Some(3));
    let out = run_stdin(&["custom", "-"], r#"{"m":[4,4],"rows":[["x","1"]]}"#);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "tmax", "--group", "su2", "--n", "12", "--k", "3"][..],
        &["--format", "csv", "table", "--reproduce", "table2", "--n-range", "8..12"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn thread_count_does_not_change_tables() {
    let args = ["--format", "csv", "table", "--reproduce", "tableSUd", "--n-range", "22..24"];
    let one = bin().args(args).env("SYMDESIGN_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("SYMDESIGN_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

fn all_agree(args: &[&str]) -> usize {
    let v = json(&run(args));
    let rows = v.as_array().unwrap();
    for r in rows {
        assert_eq!(r["agrees"], Value::Bool(true), "{r}");
    }
    rows.len()
}

#[test]
fn table2_u1_agrees() {
    let rows = all_agree(&["--format", "json", "table", "--reproduce", "table2", "--n-range", "8..20"]);
    assert!(rows > 0);
}

#[test]
fn table_sud_agrees() {
    let rows = all_agree(&["--format", "json", "table", "--reproduce", "tableSUd", "--n-range", "22..26", "--d", "3"]);
    assert_eq!(rows, 4 * 5);
}

#[test]
fn empty_range_is_empty_table() {
    let v = json(&run(&["--format", "json", "table", "--reproduce", "table1", "--n-range", "5..4"]));
    assert_eq!(v, Value::Array(vec![]));
}

#[test]
fn smatrix_rows() {
    let out = run(&["smatrix", "--group", "u1", "--n", "3", "--k", "1"]);
    let rows: Vec<Vec<String>> =
        stdout(&out).lines().map(|l| l.split_whitespace().map(String::from).collect()).collect();
    assert_eq!(rows[1], ["v=0", "1", "2", "1", "0"]);
    assert_eq!(rows[2], ["v=1", "0", "1", "2", "1"]);
}

#[test]
fn lower_bound_command() {
    let v = json(&run(&["--format", "json", "lower-bound", "--group", "u1", "--n", "10", "--k", "2"]));
    assert!(v.is_object());
}

#[test]
fn verify_suite_passes() {
    let out = run(&["verify", "--suite", "identities-u1", "--n-max", "16"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("pass"));
}
