use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn liaison(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liaison"))
        .args(args)
        .env_remove("LIAISON_LAB_SEED")
        .output()
        .expect("run liaison")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

const TC_FILE: &str = "\
# twisted cubic
ring GF(32003)[x,y,z,w]
ideal I = (x*z - y^2, y*w - z^2, x*w - y*z)
matrix P rowtwists [0] {
  x*z - y^2, y*w - z^2, x*w - y*z
}
module TC = coker P
";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn link_twisted_cubic() {
    let out = liaison(&["link", "--module", "TC", "--auto", "--seed", "7", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["result"]["deg_check"], "4 = 3 + 1");
    assert_eq!(v["result"]["formulas"]["degree_ok"], true);
}

#[test]
fn matreduce_two_by_two() {
    let out = liaison(&["matreduce", "--matrix", "A2x2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let s = &v["result"]["certificate"]["stages"][0]["s"]["rows"];
    assert_eq!(s, &serde_json::json!([["x*y", "y*z"], ["y*z", "z*w"]]));
    assert_eq!(v["result"]["terminal"], "z");
}

#[test]
fn replay_is_deterministic() {
    let args = ["double-link", "--module", "SKEW", "--auto", "--seed", "11", "--json"];
    let (a, b) = (liaison(&args), liaison(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_liaison"))
        .args(["qgor-check", "--module", "CI", "--json"])
        .env("LIAISON_LAB_SEED", "9")
        .output()
        .unwrap();
    let v = json_of(&out);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["result"]["verdict"], "YES");
}

#[test]
fn session_verifies_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let s = s.to_str().unwrap();
    for args in [
        vec!["link", "--module", "TC", "--by", "CI", "--seed", "3"],
        vec!["matreduce", "--matrix", "A3x3"],
        vec!["hilbert", "--module", "SKEW", "--window", "-2:3"],
    ] {
        let mut args = args.clone();
        args.extend(["--session", s]);
        assert_eq!(liaison(&args).status.code(), Some(0));
    }
    let out = liaison(&["verify-chain", "--session", s, "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json_of(&out)["result"]["records"].as_array().unwrap().len(), 3);

    let mut log: Value = serde_json::from_str(&fs::read_to_string(s).unwrap()).unwrap();
    log["records"][1]["certificate"]["stages"][0]["lambda"] = "x".into();
    fs::write(s, serde_json::to_string(&log).unwrap()).unwrap();
    let out = liaison(&["verify-chain", "--session", s]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("record 1 (matreduce): FAILED"));

    fs::write(s, "{ not json").unwrap();
    assert_eq!(liaison(&["verify-chain", "--session", s]).status.code(), Some(2));
}

#[test]
fn definition_files() {
    let dir = tempfile::tempdir().unwrap();
    let tc = write(dir.path(), "tc.defs", TC_FILE);
    let out = liaison(&["--defs", &tc, "hilbert", "--module", "TC", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["summary"]["degree"], 3);
    // ideals stand for their quotient rings
    let out = liaison(&["--defs", &tc, "resolve", "--module", "I", "--json"]);
    assert_eq!(json_of(&out)["result"]["length"], 2);

    let bad = write(dir.path(), "bad.defs", "ring GF(101)[x,y]\nmatrix A rowtwists [0, 0] { x, y ; x^2, y }\n");
    let out = liaison(&["--defs", &bad, "resolve", "--module", "A"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("(1, 0)"), "{err}");

    let dup = write(dir.path(), "dup.defs", "ring GF(101)[x,y]\nideal I = (x)\nideal I = (y)\n");
    let out = liaison(&["--defs", &dup, "resolve", "--module", "I"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate name `I`"));
}

#[test]
fn usage_errors() {
    assert_eq!(liaison(&["link", "--module", "TC"]).status.code(), Some(1));
    assert_eq!(liaison(&["resolve", "--module", "NOPE"]).status.code(), Some(1));
    assert_eq!(liaison(&["verify-chain"]).status.code(), Some(1));
    assert_eq!(liaison(&["--help"]).status.code(), Some(0));
}
