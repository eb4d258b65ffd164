use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polyfunctor"));
    c.env_remove("POLYFUNCTOR_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn without_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_ms");
    v
}

#[test]
fn strength_of_rank_three_quadric() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", "[[1,0,0,0],[0,2,0,0],[0,0,-1,0],[0,0,0,0]]");
    let r = report(&["strength", "--mode", "sym", "--matrix", s(&m)]);
    assert_eq!(r["result"]["value"], 2);
    assert_eq!(r["result"]["rank"], 3);
    assert_eq!(r["result"]["certificate_verified"], true);
    assert_eq!(r["operation"], "strength_deg2");
}

#[test]
fn alternating_strength_is_half_rank() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", "[[0,1,0,0],[-1,0,0,0],[0,0,0,3],[0,0,-3,0]]");
    let r = report(&["strength", "--mode", "alt", "--matrix", s(&m)]);
    assert_eq!(r["result"]["value"], 2);
}

#[test]
fn unipotent_certificate() {
    let r = report(&["strength", "--unipotent", "5/2"]);
    assert_eq!(r["result"]["value"], 1);
    assert_eq!(r["result"]["mu"], "2/1");
    assert_eq!(r["result"]["a"], "4/3");
    assert_eq!(r["result"]["b"], "-1/3");
    assert_eq!(r["result"]["certificate_verified"], true);
    let r = report(&["strength", "--unipotent", "-2"]);
    assert_eq!(r["result"]["value"], 2);
}

#[test]
fn lr_example() {
    let r = report(&["lr", "--lambda", "3", "--mu", "1", "--nu", "2"]);
    assert_eq!(r["result"]["value"], 1);
    let r = report(&["lr", "--lambda", "2,1", "--mu", "1", "--nu", "2,2"]);
    assert_eq!(r["result"]["value"], 0);
}

#[test]
fn spec_operations() {
    let r = report(&["derive", "--spec", "S3"]);
    assert_eq!(r["result"]["derivative"], "S2");
    let r = report(&["lessdot", "--q", "S2", "--p", "S3"]);
    assert_eq!(r["result"]["value"], true);
    let r = report(&["shift", "--spec", "S2", "--n", "2", "--k", "1"]);
    assert_eq!(r["result"]["dims"], serde_json::json!([3, 2, 1]));
    assert_eq!(r["result"]["total"], 6);
}

#[test]
fn minimal_q_is_coherent() {
    let r = report(&["minimal-q", "--spec", "S3+E3", "--blocks", "2", "--verify"]);
    assert_eq!(r["result"]["coherent"], true);
    assert_eq!(r["result"]["levels"], serde_json::json!([6, 12]));
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", "{\"rows\": [[1, 2]");
    let out = run(&["strength", "--matrix", s(&m)]);
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "parse");
    assert!(out.stdout.is_empty());
}

#[test]
fn budget_overrun_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.json",
        r#"{"field":"fp:5","spec":"S3","n":2,"terms":[
            {"summand":1,"label":{"1":3},"coeff":"1 mod 5"},
            {"summand":1,"label":{"1":1,"2":2},"coeff":"1 mod 5"},
            {"summand":1,"label":{"2":3},"coeff":"1 mod 5"}]}"#,
    );
    let out = run(&["strength", "--form", s(&f), "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&["strength", "--form", s(&f)]);
    assert_eq!(r["result"]["value"], 2);
}

#[test]
fn reports_are_reproducible_and_canonical() {
    let args = ["orbit-check", "--spec", "S2", "--blocks", "2", "--m", "2", "--field", "fp:3", "--samples", "20", "--seed", "9"];
    let a = run(&args);
    let b = bin().args(args).env("POLYFUNCTOR_WORKERS", "1").output().unwrap();
    let (va, vb): (Value, Value) = (serde_json::from_slice(&a.stdout).unwrap(), serde_json::from_slice(&b.stdout).unwrap());
    assert_eq!(without_time(va.clone()), without_time(vb));
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(polyfunctor::json::to_canonical_string(&va), text);
}

#[test]
fn exhaustive_orbit_check() {
    let r = report(&["orbit-check", "--spec", "S2", "--blocks", "2", "--m", "2", "--field", "fp:2"]);
    assert_eq!(r["result"]["outcome"], "full");
    assert_eq!(r["result"]["mode"], "exhaustive");
}

#[test]
fn omega() {
    let r = report(&["omega-check", "--kind", "T2", "--n", "2"]);
    assert_eq!(r["result"], serde_json::json!({"rank": 4, "dim": 4, "full": true}));
    assert_eq!(run(&["omega-check", "--kind", "S2+E2", "--n", "2"]).status.code(), Some(1));
}

#[test]
fn banded_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let st = write(dir.path(), "a.json", r#"{"a": {"1,1": "3", "1,2": "1/2", "2,3": -1, "3,3": "2/7"}}"#);
    let w = dir.path().join("w.json");
    let r = report(&["specialize2", "--stream", s(&st), "--rows", "3", "--witness-out", s(&w)]);
    assert_eq!(r["result"]["verified"], true);
    assert_eq!(r["result"]["q_level"], 6);
    assert_eq!(r["witness_path"], s(&w));
    let v = report(&["verify-witness", "--witness", s(&w)]);
    assert_eq!(v["result"]["verified"], true);

    let c = report(&["classify2", "--stream", s(&st)]);
    assert_eq!(c["result"]["sym_ranks"], serde_json::json!([3]));
    assert_eq!(c["result"]["summary"], "rank 3 at level 3");
}

#[test]
fn tampered_witness_fails() {
    let dir = tempfile::tempdir().unwrap();
    let st = write(dir.path(), "a.json", r#"{"a": {"1,2": "1", "2,3": "1"}}"#);
    let w = dir.path().join("w.json");
    report(&["specialize2", "--stream", s(&st), "--kind", "alternating", "--rows", "3", "--witness-out", s(&w)]);
    let text = std::fs::read_to_string(&w).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["target"]["layers"][0]["terms"][0]["coeff"] = "5/1".into();
    std::fs::write(&w, v.to_string()).unwrap();
    assert_eq!(run(&["verify-witness", "--witness", s(&w)]).status.code(), Some(1));
}

#[test]
fn maximal_route_and_e_apply() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&["maximal-r", "--d", "2", "--depth", "2"]);
    assert_eq!(r["result"]["levels"], serde_json::json!([2, 10]));
    assert_eq!(r["result"]["coherent"], true);

    // target x1⊗x2 − 2 x2⊗x1 at level 2
    let t = write(
        dir.path(),
        "t.json",
        &serde_json::json!({
            "field": "q", "spec": "T2", "levels": [2], "shift": 0,
            "layers": [{"field": "q", "spec": "T2", "n": 2, "terms": [
                {"summand": 1, "label": [1, 2], "coeff": "1"},
                {"summand": 1, "label": [2, 1], "coeff": "-2"}]}]
        })
        .to_string(),
    );
    let w = dir.path().join("w.json");
    let s1 = report(&["specialize", "--element", s(&t), "--maximal", "3", "--witness-out", s(&w)]);
    assert_eq!(s1["result"]["verified"], true);
    assert_eq!(s1["operation"], "maximal_specializer");

    let wv: Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    let e = write(dir.path(), "e.json", &wv["e"].to_string());
    let src = write(dir.path(), "r.json", &wv["source"].to_string());
    let a = report(&["e-apply", "--e", s(&e), "--p", s(&src), "--level", "2"]);
    let b = report(&["e-apply", "--e", s(&e), "--p", s(&src), "--level", "2", "--width", "26"]);
    assert_eq!(a["result"], b["result"]);
    let terms = &a["result"]["element"]["terms"];
    assert_eq!(terms[0]["label"], serde_json::json!([1, 2]));
    assert_eq!(terms[1]["coeff"], "-2/1");
}

#[test]
fn field_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"field": "q", "rows": [[1]]}"#);
    assert_eq!(run(&["strength", "--matrix", s(&m), "--field", "fp:5"]).status.code(), Some(1));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().join("out.json");
    let out = run(&["lr", "--lambda", "2", "--mu", "1", "--nu", "1", "--output", s(&o)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&o).unwrap()).unwrap();
    assert_eq!(v["result"]["value"], 1);
}

#[test]
fn search_route_over_f5() {
    let dir = tempfile::tempdir().unwrap();
    // x1*x2 + 2*x3^2 + 2*x4^2 reaches x1*x2 + x3*x4 since 2 + 2 = 4 = -1 in F_5
    let layer = |n: usize, terms: serde_json::Value| serde_json::json!({"field": "fp:5", "spec": "S2", "n": n, "terms": terms});
    let t2 = serde_json::json!([{"summand": 1, "label": {"1": 1, "2": 1}, "coeff": "1 mod 5"}]);
    let mut t4 = t2.as_array().unwrap().clone();
    t4.push(serde_json::json!({"summand": 1, "label": {"3": 2}, "coeff": "2 mod 5"}));
    t4.push(serde_json::json!({"summand": 1, "label": {"4": 2}, "coeff": "2 mod 5"}));
    let p = write(
        dir.path(),
        "p.json",
        &serde_json::json!({"field": "fp:5", "spec": "S2", "levels": [2, 4], "shift": 0,
            "layers": [layer(2, t2), layer(4, t4.into())]})
        .to_string(),
    );
    let w = dir.path().join("w.json");
    let r = report(&["specialize", "--element", s(&p), "--blocks", "2", "--witness-out", s(&w)]);
    assert_eq!(r["operation"], "minimal_specializer_search");
    assert_eq!(r["result"]["verified_levels"], serde_json::json!([2, 4]));
    assert_eq!(report(&["verify-witness", "--witness", s(&w)])["result"]["verified"], true);
    assert_eq!(
        run(&["specialize", "--element", s(&p), "--blocks", "2", "--budget", "0"]).status.code(),
        Some(3)
    );
}
