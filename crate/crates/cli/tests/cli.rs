use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artinforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_text_and_exit_code() {
    let o = run(&["table", "--group", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("group S3 order 6 classes 3"));
    assert!(s.contains("rows=true columns=true"));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(run(&["table", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn unknown_group_is_usage_error() {
    let o = run(&["table", "--group", "NotAGroup"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn json_report_shape() {
    let o = run(&["--json", "table", "--group", "Q8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "table");
    assert_eq!(v["orderings"], "bfs-1");
    assert_eq!(v["failed"], 0);
    assert!(v["sections"].as_array().unwrap().len() >= 2);
}

#[test]
fn json_is_deterministic_across_threads() {
    let a = run(&["--json", "--threads", "1", "asai", "--group", "S4"]);
    let b = run(&["--json", "--threads", "4", "asai", "--group", "S4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn covers_distinguished_by_transposition_lifts() {
    let t = stdout(&run(&["cover", "--kind", "tilde"]));
    let h = stdout(&run(&["cover", "--kind", "hat"]));
    assert!(t.contains("transposition lifts have order 2"));
    assert!(h.contains("transposition lifts have order 4"));
}

#[test]
fn monomialize_s4() {
    let o = run(&["monomialize", "--group", "S4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Ind from order 8"));
}

#[test]
fn quartic_search_default() {
    let o = run(&["--json", "quartic-search", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let flags = &v["sections"][0]["data"]["verified"];
    assert_eq!(flags, &serde_json::json!([true, true, true, true, true]));
}

#[test]
fn quartic_search_needs_three_primes() {
    assert_eq!(run(&["quartic-search", "--primes", "3,7"]).status.code(), Some(2));
}

#[test]
fn quartic_search_budget_exhausted() {
    let o = run(&["quartic-search", "--budget", "1", "--samples", "0", "--primes", "3,7,19"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn galois_and_dedekind() {
    let g = stdout(&run(&["galois-id", "--poly=-1,-1,0,0,1"]));
    assert!(g.contains("group S4"));
    assert!(g.contains("discriminant -283"));
    let d = run(&["dedekind-check", "--poly=-1,-1,0,0,1", "--bound", "2000"]);
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).contains("failed 0"));
}

#[test]
fn go4_and_classify() {
    let g = run(&["go4", "--group", "Q8"]);
    assert_eq!(g.status.code(), Some(0));
    assert!(stdout(&g).contains("group order 64 (expected 64)"));
    let c = run(&["classify", "--group", "GO4(Q8)"]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(run(&["classify", "--group", "S4"]).status.code(), Some(2));
}

#[test]
fn corpus_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["corpus", "verify", "--dir", d]).status.code(), Some(1));
    assert_eq!(run(&["corpus", "regenerate", "--dir", d]).status.code(), Some(0));
    assert_eq!(run(&["corpus", "verify", "--dir", d]).status.code(), Some(0));
    let f = dir.path().join("S3.table.txt");
    std::fs::write(&f, "tampered").unwrap();
    let o = run(&["corpus", "verify", "--dir", d]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("S3.table.txt: differs"));
}

#[test]
fn shipped_corpus_matches() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let o = run(&["corpus", "verify", "--dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn timings_flag() {
    let v: serde_json::Value =
        serde_json::from_slice(&run(&["--json", "--timings", "table", "--group", "S3"]).stdout).unwrap();
    assert!(v.get("timings").is_some());
    let v: serde_json::Value = serde_json::from_slice(&run(&["--json", "table", "--group", "S3"]).stdout).unwrap();
    assert!(v.get("timings").is_none());
}
