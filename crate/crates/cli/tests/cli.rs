use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use valtree::valuation::json::{canonical_from_value, canonical_to_value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valtree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const TREE: &str = r#"{"nodes":{"root":{"children":[
    {"edge":"2","node":{"children":[{"edge":"2","node":{}},{"edge":"1","node":{}}]}},
    {"edge":"inf","node":{}}]}},"psi":"arclength+1"}"#;

#[test]
fn eval_monomial() {
    let o = run(&["val", "eval", "--valuation", r#"{"weights":["1","2"]}"#, "--poly", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2");
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("config:"));
}

#[test]
fn inf_of_opposite_monomials_is_the_root() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "a.json", r#"{"weights":["1","2"]}"#);
    let b = write(&d, "b.json", r#"{"weights":["2","1"]}"#);
    let o = run(&["val", "inf", "--json", "--in", a.to_str().unwrap(), "--in", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), r#"{"steps":[],"terminal":{"divisorial":"1"}}"#);
}

#[test]
fn printed_json_reparses() {
    let v = r#"{"steps":[{"center":"-1/2"},{"center":"inf"}],"weights":["2","7/3"]}"#;
    let o = run(&["val", "canon", "--json", "--valuation", v]);
    let printed: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let form = canonical_from_value(&printed).unwrap();
    assert_eq!(canonical_to_value(&form), printed);
    let again = run(&["val", "canon", "--json", "--valuation", &stdout(&o)]);
    assert_eq!(stdout(&again), stdout(&o));

    let n = run(&["val", "normalize", "--json", "--valuation", v]);
    let m = run(&["val", "mvalue", "--valuation", &stdout(&n)]);
    assert_eq!(stdout(&m), "1");
}

#[test]
fn stream_tables() {
    let o = run(&["val", "stream", "--json", "--valuation", r#"{"weights":["1","5/2"]}"#]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows: Vec<(u64, String, String)> = j["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["level"].as_u64().unwrap(),
                r["center"].as_str().unwrap().to_string(),
                r["multiplicity"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    let want = [(0, "0", "1"), (1, "0", "1"), (2, "inf", "1/2")];
    assert_eq!(rows.len(), 3);
    for (got, w) in rows.iter().zip(want) {
        assert_eq!((got.0, got.1.as_str(), got.2.as_str()), w);
    }
    assert_eq!(j["lambda"], 4);

    let o = run(&["val", "stream", "--json", "--valuation", r#"{"weights":["1","1"]}"#]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["rows"], Value::Array(vec![]));
    assert_eq!(j["lambda"], 1);
    assert_eq!(j["canonical"]["terminal"]["divisorial"], "1");

    let o = run(&["val", "stream", "--valuation", r#"{"weights":["1","inf"]}"#]);
    assert!(stdout(&o).contains("center 0, m=1 (repeats)"), "{}", stdout(&o));
}

#[test]
fn compare_krull_and_witnesses() {
    let a = r#"{"weights":["1","2"]}"#;
    let b = r#"{"weights":["1","3"]}"#;
    let o = run(&["val", "compare", "--valuation", a, "--valuation", b, "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("LT"));

    let o = run(&["val", "krull", "--json", "--valuation", r#"{"weights":["1","inf"]}"#, "--poly", "x*y^2"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["value"], serde_json::json!(["2", "1"]));

    let o = run(&["val", "witness", "--valuation", a]);
    assert_eq!(stdout(&o), "y");
    let o = run(&["val", "witness", "--json", "--valuation", r#"{"weights":["1","1"]}"#]);
    assert_eq!(stdout(&o), "null");

    let o = run(&["val", "common-min", "--json", "--valuation", a, "--valuation", r#"{"weights":["2","1"]}"#]);
    assert_eq!(stdout(&o), r#"["1","1"]"#);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["val", "eval", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["val", "eval", "--valuation", "{", "--poly", "x"]).status.code(), Some(2));
    assert_eq!(
        run(&["val", "eval", "--valuation", r#"{"weights":["1","2"],"extra":1}"#, "--poly", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["val", "eval", "--valuation", r#"{"weights":["1","2"]}"#]).status.code(), Some(2));
    assert_eq!(run(&["val", "inf"]).status.code(), Some(2));
}

#[test]
fn exa1_has_no_infimum() {
    let d = TempDir::new().unwrap();
    let p = write(&d, "exa1.json", r#"{"poset":"exa1"}"#);
    let o = run(&["tree", "inf", "--tree", p.to_str().unwrap(), "--points", "X,Y"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no infimum"));
    let o = run(&["tree", "inf", "--tree", p.to_str().unwrap(), "--points", "X,seg@1/3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "seg@1/3");
    let o = run(&["tree", "check", "--tree", p.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pass: Vec<bool> = j["results"].as_array().unwrap().iter().map(|r| r["pass"].as_bool().unwrap()).collect();
    assert_eq!(pass, [true, true, true, false]);
}

#[test]
fn tree_commands() {
    let d = TempDir::new().unwrap();
    let t = write(&d, "t.json", TREE);
    let t = t.to_str().unwrap();
    assert_eq!(run(&["tree", "check", "--tree", t, "--grid", "3"]).status.code(), Some(0));

    let o = run(&["tree", "inf", "--tree", t, "--points", "0/0@1,0/1"]);
    assert_eq!(stdout(&o), "0 (psi = 3)");

    let o = run(&["tree", "dist", "--tree", t, "--points", "root,0"]);
    assert_eq!(stdout(&o), "2/3");

    let o = run(&["tree", "nbhd", "--tree", t, "--base", "0@1", "--rep", "0/0", "--points", "0/1,root,1@5"]);
    assert_eq!(stdout(&o), "0/1: in\nroot: out\n1@5: out");

    let o = run(&["tree", "ball-check", "--tree", t, "--sigma", "0/0", "--tau", "0@1", "--gamma", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["tree", "ball-check", "--tree", t, "--sigma", "0/0", "--tau", "0@1", "--gamma", "root"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["tree", "countability", "--branches", "30", "--neighborhoods", "5", "--json"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["verified"], 5);
    assert_eq!(run(&["tree", "countability", "--branches", "3", "--neighborhoods", "2"]).status.code(), Some(2));
}

#[test]
fn suite_all_passes() {
    let o = run(&["suite", "all", "--seed", "7"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.starts_with("seed 0x7"));
    assert_eq!(out.matches(" PASS ").count(), 15);
}

#[test]
fn hex_and_decimal_seeds_agree() {
    let args = |s: &'static str| ["tree", "countability", "--branches", "50", "--neighborhoods", "5", "--seed", s];
    let hex = run(&args("0x1f"));
    assert_eq!(hex.status.code(), Some(0));
    assert_eq!(stdout(&hex), stdout(&run(&args("31"))));
    assert_eq!(run(&args("0xzz")).status.code(), Some(2));
}
