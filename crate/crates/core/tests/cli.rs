use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn lporder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lporder")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn summary(text: &str) -> Value {
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, v: &Value) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, v.to_string()).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn roots(v: &[&str]) -> Value {
    json!({"mode": "rational", "roots": v})
}

#[test]
fn lists_suites() {
    let o = lporder(&["suites"]);
    assert_eq!(code(&o), 0);
    let names = stdout(&o);
    for name in ["oracle", "chain", "main1", "main2", "allincr", "lag-ms"] {
        assert!(names.lines().any(|l| l == name), "{name}");
    }
}

#[test]
fn verify_prints_json_lines_and_passes() {
    let o = lporder(&["verify", "oracle", "--trials", "50", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let s = summary(&stdout(&o));
    assert_eq!(s["type"], "summary");
    assert_eq!(s["passed"], true);
    assert_eq!(s["trials"], 50);
    assert_eq!(s["seed"], 3);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "main2", "--trials", "30", "--seed", "8", "--mode", "float"];
    assert_eq!(lporder(&args).stdout, lporder(&args).stdout);
}

#[test]
fn config_file_with_flag_override_and_out_file() {
    let f = Files::new();
    let cfg = f.put("run.json", &json!({"trials": 3, "seed": 5, "mode": "float"}));
    let out = f.path("report.jsonl");
    let o = lporder(&["verify", "iso", "--config", s(&cfg), "--trials", "7", "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let s = summary(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(s["trials"], 7);
    assert_eq!(s["seed"], 5);
    assert_eq!(s["mode"], "float");
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(code(&lporder(&["verify", "no-such-suite"])), 2);
    assert_eq!(code(&lporder(&["frobnicate"])), 2);
    assert_eq!(code(&lporder(&["verify", "oracle", "--mode", "decimal"])), 2);
    let f = Files::new();
    let cfg = f.put("bad.json", &json!({"trails": 3}));
    let o = lporder(&["verify", "oracle", "--config", s(&cfg)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("configuration error"));
    let missing = f.path("missing.json");
    assert_eq!(
        code(&lporder(&["majorize", "check", "--q", s(&missing), "--p", s(&missing)])),
        2
    );
    assert_eq!(code(&lporder(&["hunt", "pb9"])), 2);
}

#[test]
fn majorize_check_exit_codes() {
    let f = Files::new();
    let (q, p) = (
        f.put("q.json", &roots(&["1", "3"])),
        f.put("p.json", &roots(&["0", "4"])),
    );
    let o = lporder(&["majorize", "check", "--q", s(&q), "--p", s(&p)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["verdict"], "Less");
    let o = lporder(&["majorize", "check", "--q", s(&p), "--p", s(&q)]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_out(&o)["verdict"], "Incomparable");
}

#[test]
fn witness_matrix() {
    let f = Files::new();
    let (q, p) = (
        f.put("q.json", &roots(&["1", "3"])),
        f.put("p.json", &roots(&["0", "4"])),
    );
    let o = lporder(&["majorize", "witness", "--q", s(&q), "--p", s(&p)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["matrix"], json!([["3/4", "1/4"], ["1/4", "3/4"]]));
}

#[test]
fn decompose_then_verify() {
    let f = Files::new();
    let (p, q) = (
        f.put("p.json", &roots(&["0", "2", "4"])),
        f.put("q.json", &roots(&["1", "2", "3"])),
    );
    let o = lporder(&["chain", "decompose", "--p", s(&p), "--q", s(&q)]);
    assert_eq!(code(&o), 0);
    let d = json_out(&o);
    assert_eq!(d["chain"]["steps"].as_array().unwrap().len(), 8);
    let chain = f.put("chain.json", &d["chain"]);
    let o = lporder(&["chain", "verify", "--chain", s(&chain)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["clean"], true);

    let mut tampered = d["chain"].clone();
    tampered["target"] = roots(&["1", "2", "3"]);
    tampered["steps"].as_array_mut().unwrap().pop();
    let bad = f.put("bad.json", &tampered);
    let o = lporder(&["chain", "verify", "--chain", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_out(&o)["clean"], false);
}

#[test]
fn repeated_roots_need_a_perturbation() {
    let f = Files::new();
    let (p, q) = (
        f.put("p.json", &roots(&["0", "2", "4"])),
        f.put("q.json", &roots(&["2", "2", "2"])),
    );
    assert_eq!(code(&lporder(&["chain", "decompose", "--p", s(&p), "--q", s(&q)])), 2);
    let o = lporder(&["chain", "decompose", "--p", s(&p), "--q", s(&q), "--eps", "1/100"]);
    assert_eq!(code(&o), 0);
    let o = lporder(&["majorize", "chain", "--q", s(&q), "--p", s(&p)]);
    assert_eq!(code(&o), 0);
}

#[test]
fn random_pair_is_seeded() {
    let a = lporder(&["chain", "random-pair", "--degree", "4", "--seed", "2"]);
    let b = lporder(&["chain", "random-pair", "--degree", "4", "--seed", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json_out(&a);
    assert_eq!(v["p"]["roots"].as_array().unwrap().len(), 4);
}

#[test]
fn operators() {
    let f = Files::new();
    let x2 = f.put("x2.json", &roots(&["0", "0"]));
    let x3 = f.put("x3.json", &roots(&["0", "0", "0"]));
    let o = lporder(&["op", "gaussian", "--poly", s(&x3), "--a", "1/2"]);
    assert_eq!(json_out(&o)["coeffs"], json!(["0", "-3", "0", "1"]));

    let phi = f.put("phi.json", &json!({"alphas": ["1"]}));
    let o = lporder(&["op", "apply", "--phi", s(&phi), "--poly", s(&x2)]);
    assert_eq!(json_out(&o)["coeffs"], json!(["-1", "0", "1"]));

    let gauss = f.put("gauss.json", &json!({"a": "1"}));
    let o = lporder(&["op", "appell", "--phi", s(&gauss), "--degree", "2", "--normalized"]);
    assert_eq!(json_out(&o)["coeffs"], json!(["-2", "0", "1"]));

    let o = lporder(&["op", "shift-pencil", "--poly", s(&x2), "--lambda", "-1"]);
    assert_eq!(code(&o), 0);
    // (x - 1)² + 2(x - 1) = x² - 1
    assert_eq!(json_out(&o)["coeffs"], json!(["-1", "0", "1"]));

    let p = f.put("p.json", &roots(&["1", "2"]));
    let gamma = f.put("gamma.json", &json!(["0", "1", "2"]));
    let o = lporder(&["op", "multiplier", "--poly", s(&p), "--gamma", s(&gamma)]);
    assert_eq!(json_out(&o)["coeffs"], json!(["0", "-3", "2"]));
    let o = lporder(&[
        "op",
        "multiplier",
        "--poly",
        s(&p),
        "--laguerre",
        "1",
        "0",
        "--normalized",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&lporder(&["op", "multiplier", "--poly", s(&p)])), 2);

    let sv = f.put("s.json", &json!(["1", "1/2"]));
    let phi2 = f.put("phi2.json", &json!({"alphas": ["1", "-1"]}));
    let o = lporder(&[
        "op",
        "deform",
        "--phi",
        s(&phi2),
        "--s",
        s(&sv),
        "--poly",
        s(&x3),
        "--normalized",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_out(&o)["real_rooted"], true);
}

#[test]
fn pencil_scan_csv() {
    let f = Files::new();
    let p = f.put("p.json", &roots(&["-1", "1"]));
    let o = lporder(&["pencil", "scan", "--poly", s(&p), "--grid", "2", "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda,x1,x2,f1,f2");
    assert_eq!(lines.len(), 6);
    let o = lporder(&["pencil", "scan", "--poly", s(&p)]);
    assert_eq!(stdout(&o).lines().count(), 202);
}

#[test]
fn hunts() {
    let o = lporder(&[
        "hunt",
        "pb2",
        "--trials",
        "30",
        "--min-degree",
        "2",
        "--max-degree",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(summary(&stdout(&o))["passed"], true);
    let o = lporder(&[
        "hunt",
        "pb1",
        "--trials",
        "20",
        "--family",
        "laguerre",
        "--laguerre",
        "2",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    let o = lporder(&["hunt", "pb3", "--trials", "20", "--family", "translation"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("\"type\":\"observation\"")));
    assert_eq!(code(&lporder(&["hunt", "pb1", "--family", "nope"])), 2);
}
