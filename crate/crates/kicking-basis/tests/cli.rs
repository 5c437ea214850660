//! End-to-end runs of the `kicking` binary.

use std::process::{Command, Output};

fn kicking(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kicking")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hilbert_prints_the_degree_polynomial() {
    let o = kicking(&["hilbert", "--shape", "2,1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "1 + 2*q + 2*t + q*t  symmetric:yes  (N,M)=(1,1)");
    let json: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(json["symmetric"], true);
}

#[test]
fn basis_of_a_single_cell() {
    let o = kicking(&["basis", "--shape", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), "1\t()\t(0,0)");
}

#[test]
fn bad_shapes_exit_with_usage_code() {
    for args in [&["hilbert", "--shape", "3,2"][..], &["basis", "--shape", "x"], &["certify", "--shape", "2,2", "--kind", "hook"]] {
        let o = kicking(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn certify_reports_json() {
    let o = kicking(&["certify", "--shape", "3,1,1"]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(json["schema"], "kicking/1");
    assert_eq!(json["verdict"], "nonsingular");
    assert_eq!(json["n"], 5);
}

#[test]
fn oracle_compare_matches() {
    let o = kicking(&["oracle", "--shape", "2,1,1", "--compare"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("MATCH"));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn jtable_agrees() {
    let o = kicking(&["jtable", "--amax", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().count() > 5);
    assert!(out.lines().all(|l| l.ends_with("\tagree")), "{out}");
}

#[test]
fn verify_all_is_deterministic() {
    let a = kicking(&["verify-all", "--nmax", "4"]);
    let b = kicking(&["verify-all", "--nmax", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
}
