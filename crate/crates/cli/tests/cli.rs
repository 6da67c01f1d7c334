use std::process::{Command, Output};

use serde_json::Value;

fn mldlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mldlab"))
        .args(args)
        .env_remove("MLDLAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn mld_minus_infinity_example() {
    let out = mldlab(&["mld", "x^2, y^3 @ 1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"]["kind"], "minus_infinity");
    assert_eq!(v["divisor"]["p"], serde_json::json!([3, 2]));
    assert_eq!(v["divisor"]["k"], 4);
    assert_eq!(v["monomialized"], false);
}

#[test]
fn lct_of_a_line() {
    let v = json(&mldlab(&["lct", "x @ 1"]));
    assert_eq!(v["value"]["kind"], "finite");
    assert_eq!(v["value"]["scalar"]["a"], "1");
    assert_eq!(v["ray"], serde_json::json!([1, 0]));
    assert_eq!(v["exceptional"], false);
}

#[test]
fn polynomial_input_is_monomialized() {
    let v = json(&mldlab(&["mld", "y + x^2 @ 3/4"]));
    assert_eq!(v["monomialized"], true);
    assert_eq!(v["upper_bound"], true);
    let v = json(&mldlab(&["lct", "y + x^2"]));
    assert_eq!(v["monomialized"], true);
}

#[test]
fn exit_codes() {
    let out = mldlab(&["mld", "x^2, y^ @ 1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert!(out.stdout.is_empty());
    assert_eq!(mldlab(&["mld", "x @ 0"]).status.code(), Some(2));
    assert_eq!(mldlab(&["--char", "6", "mld", "x"]).status.code(), Some(2));
    assert_eq!(mldlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mldlab(&["value-set", "1", "--box", "2,3"]).status.code(), Some(3));
    let out = mldlab(&["ell", "1", "--box", "1", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["mld", "x^3, y^4 @ 2/pi"][..],
        &["fan", "x^2 + y^3, x*y @ 1/2 ; y @ 1"],
        &["ell", "1", "--box", "3"],
        &["acc-probe", "1,1/2", "--limits", "1", "--box", "2", "--samples", "3", "--arity", "2", "--seed", "5"],
    ] {
        let a = mldlab(args);
        let b = mldlab(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn csv_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ell.csv");
    let p = path.to_str().unwrap();

    // A box of zero only has the trivial ideal, which is excluded.
    assert_eq!(mldlab(&["ell", "1", "--box", "0", "--out", p]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "generators,exponents,mld,divisor_p1,divisor_p2,k\n");

    assert_eq!(mldlab(&["ell", "1", "--box", "3", "--out", p]).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let gens: Vec<String> = reader.records().map(|r| r.unwrap()[0].to_string()).collect();
    assert!(!gens.is_empty());
    let mut sorted = gens.clone();
    sorted.sort();
    assert_eq!(gens, sorted);

    assert_eq!(mldlab(&["ell", "1", "--box", "3", "--out", p]).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mldlab.conf");
    std::fs::write(&cfg, "# lab defaults\nbox = 2\n").unwrap();
    let run = |extra: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_mldlab"))
            .args(["ell", "1"])
            .args(extra)
            .env("MLDLAB_CONFIG", &cfg)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        json(&out)
    };
    assert_eq!(run(&[])["boxes"], serde_json::json!([2]));
    assert_eq!(run(&["--box", "1"])["boxes"], serde_json::json!([1]));
}

#[test]
fn selftest_exit_code_matches_report() {
    let out = mldlab(&["selftest"]);
    let v = json(&out);
    let failed = v["failed"].as_u64().unwrap();
    let listed = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").count() as u64;
    assert_eq!(failed, listed);
    assert_eq!(out.status.code(), Some(if failed == 0 { 0 } else { 1 }));
}

#[test]
fn oracle_agrees_on_small_input() {
    let v = json(&mldlab(&["oracle", "x^2, y^3 @ 1/2", "--box", "12"]));
    assert_eq!(v["agree"], true);
}
