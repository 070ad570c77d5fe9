use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write(name: &str, genome: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("rkit-cli");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, genome).unwrap();
    p
}

fn rkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rkit")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = rkit(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn tandem_bi_on_worked_genome() {
    let p = write("scenarex.txt", "[ 1' 2' 3 3' 5 4 1 2 4' 5' ]\n");
    let v = json(&["tandem", "--model", "bi", p.to_str().unwrap()]);
    assert_eq!(v["distance"], 2);
    let steps = v["scenario"].as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert!(steps.iter().all(|s| s["kind"] == "bi" && s["dcjs"].as_array().unwrap().len() == 2));
    let text = String::from_utf8(rkit(&["tandem", "--model", "bi", p.to_str().unwrap()]).stdout).unwrap();
    assert!(text.contains("distance  2"));
}

#[test]
fn classify_perfectly_duplicated() {
    let p = write("perfect.txt", "[ 1 2 3 ] [ 1' 2' 3' ]");
    let v = json(&["classify", p.to_str().unwrap()]);
    let flags: Vec<&str> = v["flags"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert!(flags.contains(&"perfectly_duplicated"), "{flags:?}");
}

#[test]
fn verify_tandem_dcj_sweep() {
    let v = json(&["verify", "--suite", "tandem-dcj", "--max-n", "2", "--seed", "42"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["stats"][0]["checked"], 8 + 384);
}

#[test]
fn dedouble_reports_packing_and_lift() {
    let p = write("fig.txt", "[ 4 2' -1' -3 -1 2 -4' ] [ 5' -3' 6 5 6' 7 8 8' 7' ]");
    let v = json(&["dedouble", "--bd", p.to_str().unwrap()]);
    assert_eq!(v["c_i"], 2);
    assert_eq!(v["distance"], 6);
    assert_eq!(v["scenario"].as_array().unwrap().len(), 6);
    assert_eq!(v["bd"]["scenario"].as_array().unwrap().len(), 6);
    let g = json(&["dedouble", "--packing", "greedy", p.to_str().unwrap()]);
    assert!(g["distance"].as_u64().unwrap() >= 6);
}

#[test]
fn distances_between_two_files() {
    let a = write("a.txt", "[ 4 5 3 2 10 7 8 1 9 6 ]");
    let b = write("b.txt", "[ 1 2 3 4 5 6 7 8 9 10 ]");
    let v = json(&["distance", "--model", "bi", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(v["distance"], 3);
    let v = json(&["scenario", "--model", "dcj", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(v["scenario"].as_array().unwrap().len(), v["distance"].as_u64().unwrap() as usize);
}

#[test]
fn oracle_matches_halving() {
    let p = write("halve.txt", "[ 1 4' 1' -2 2' 3 -4 3' ]");
    let h = json(&["halve", p.to_str().unwrap()]);
    let o = json(&["oracle", "--goal", "perfect", "--model", "dcj", p.to_str().unwrap()]);
    assert_eq!(h["distance"], 3);
    assert_eq!(o["distance"], h["distance"]);
}

#[test]
fn graph_writes_dot() {
    let p = write("dot.txt", "[ 1 3 1' -2' -4 -3' 2 -4' ]");
    let dot = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("rkit-cli").join("overlap.dot");
    let v = json(&["graph", "--kind", "overlap", "--dot", dot.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(v["is_oriented"], true);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("graph"));
}

#[test]
fn random_is_seeded() {
    let a = rkit(&["random", "--n", "5", "--seed", "9"]);
    let b = rkit(&["random", "--n", "5", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let p = write("random.txt", &String::from_utf8(a.stdout).unwrap());
    let v = json(&["classify", p.to_str().unwrap()]);
    assert!(v["flags"].as_array().unwrap().iter().any(|f| f == "totally_duplicated"));
}

#[test]
fn exit_codes() {
    let bad = write("bad.txt", "[ 1 2");
    assert_eq!(rkit(&["classify", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(rkit(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(rkit(&["tandem", "--model", "xyz", bad.to_str().unwrap()]).status.code(), Some(1));
    let unoriented = write("unoriented.txt", "[ 1 2 1' 2' ]");
    assert_eq!(rkit(&["dedouble", "--model", "reversal", unoriented.to_str().unwrap()]).status.code(), Some(2));
    let big = write("big.txt", "[ 1 2 3 4 5 6 7 1' 2' 3' 4' 5' 6' 7' ]");
    let out = Command::new(env!("CARGO_BIN_EXE_rkit"))
        .args(["oracle", "--goal", "perfect", "--model", "dcj", big.to_str().unwrap()])
        .env("RKIT_ORACLE_CAP", "6:1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
