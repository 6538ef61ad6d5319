use std::process::{Command, Output};

use serde_json::Value;

fn tensorhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorhom")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn thm4_single_block() {
    let out = tensorhom(&["verify", "thm4", "--n", "1", "--p", "1", "--q", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["dims"]["0"], 1);
}

#[test]
fn nonassociative_algebra_is_invalid_input() {
    let dir = std::env::temp_dir().join(format!("tensorhom-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"name":"bad","basis":["a","b"],"mult":[[0,0,1,"1"],[1,0,0,"1"]]}"#).unwrap();
    let out = tensorhom(&["algebra", "check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("triple"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn ce_betti_nonabelian() {
    let out = tensorhom(&["ce", "betti", "--n", "2", "--lie", "nonabelian2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["betti"], serde_json::json!([1, 1, 0]));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(tensorhom(&["verify", "thm4", "--n", "x"]).status.code(), Some(2));
    assert_eq!(tensorhom(&["complex", "cohomology", "--algebra", "dual", "--p", "1"]).status.code(), Some(2));
    assert_eq!(tensorhom(&["algebra", "check", "no-such-algebra"]).status.code(), Some(2));
    assert_eq!(tensorhom(&["verify", "thm3", "--algebra", "sq0-n2"]).status.code(), Some(2));
}

#[test]
fn failing_mc_check_exits_one() {
    let dir = std::env::temp_dir().join(format!("tensorhom-mc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gamma.json");
    // gamma(1, x) = x makes 1 act as 2 on the left, so m + gamma is not associative
    std::fs::write(&path, r#"{"dim":2,"components":[{"k":2,"l":1,"entries":[[[0,1],[1],"1"]]}]}"#).unwrap();
    let out = tensorhom(&["mc", "check", path.to_str().unwrap(), "--algebra", "dual"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["holds"], false);
}

#[test]
fn bracket_of_product_with_itself_vanishes() {
    let out = tensorhom(&["op", "bracket", "m", "m", "--algebra", "poly0-n2-D2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["spectrum"], serde_json::json!([]));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--seed", "7", "verify", "bidifferential", "--count", "40"];
    let (a, b) = (tensorhom(&args), tensorhom(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_format() {
    let out = tensorhom(&["--format", "table", "q", "check", "--zero", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("PASS"));
    assert!(s.contains("[1,2,1]"));
}
