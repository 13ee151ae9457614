use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use soinv_core::io::save_rep;
use soinv_core::so::{random_so, sigma_involution, GroupTag, Representation};
use soinv_core::{Form, GaussianRational};

fn soinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn q_eval_two_by_two_exact() {
    let dir = tempfile::tempdir().unwrap();
    let args = write(dir.path(), "a.json", &json!([{"backend": "exact", "d": 2, "entries": [["3", "0"], ["7", "0"], ["2", "0"], ["-1", "0"]]}]));
    let out = soinv(&["q-eval", "--args", &args]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["value"], json!(["10", "0"]));
    assert_eq!(v["mode"], "fast");
}

#[test]
fn q_eval_float_naive_agrees_with_fast() {
    let dir = tempfile::tempdir().unwrap();
    let entries: Vec<Value> = [0.1, 0.5, -0.3, 0.7, 0.2, 0.0, 0.9, -0.4, 0.6, -0.8, 0.3, 0.25, -0.1, 0.35, 0.45, 0.05]
        .iter()
        .map(|x| json!([x, 0.0]))
        .collect();
    let m = json!({"backend": "float", "d": 4, "entries": entries});
    let args = write(dir.path(), "a.json", &json!({"args": [m.clone(), m]}));
    let fast = stdout_json(&soinv(&["q-eval", "--args", &args]));
    let naive = stdout_json(&soinv(&["q-eval", "--args", &args, "--naive"]));
    for k in 0..2 {
        let (a, b) = (fast["value"][k].as_f64().unwrap(), naive["value"][k].as_f64().unwrap());
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn q_eval_rejects_mixed_backends() {
    let dir = tempfile::tempdir().unwrap();
    let args = write(dir.path(), "a.json", &json!([
        {"backend": "exact", "d": 2, "entries": [["1", "0"], ["0", "0"], ["0", "0"], ["1", "0"]]},
        {"backend": "float", "d": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}
    ]));
    assert_eq!(soinv(&["q-eval", "--args", &args]).status.code(), Some(2));
}

#[test]
fn construct_dc_is_exact() {
    let out = soinv(&["construct", "--what", "dc", "--params", r#"{"c": "2"}"#]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["backend"], "exact");
    assert_eq!(v["d"], 2);
}

#[test]
fn construct_rho_refuses_n_eight() {
    let out = soinv(&["construct", "--what", "rho", "--params", r#"{"n": 8, "p": 17, "q": 19}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n = 8"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", &json!({"n": 8}));
    let out = soinv(&["verify", "--suite", "counterexample", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));

    let empty = write(dir.path(), "empty.json", &json!({"samples": 0}));
    let out = soinv(&["verify", "--suite", "genericity", "--config", &empty]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = stdout_json(&out);
    assert_eq!(reports[0]["checks"], json!([]));

    let unknown = write(dir.path(), "unknown.json", &json!({"bogus": 1}));
    assert_eq!(soinv(&["verify", "--config", &unknown]).status.code(), Some(2));
}

#[test]
fn verify_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let cfg = write(dir.path(), "cfg.json", &json!({"samples": 1, "max_len": 1, "output": target}));
    let out = soinv(&["verify", "--suite", "separation", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!(written.is_array());
}

fn so4_pair(dir: &Path) -> (String, String) {
    let a = random_so::<GaussianRational>(4, 11).unwrap();
    let b = random_so::<GaussianRational>(4, 12).unwrap();
    let rep = Representation::new(Form::Standard, GroupTag::Free, [(1, a), (2, b)]).unwrap();
    let image = sigma_involution(&rep).unwrap();
    let (pa, pb) = (dir.join("a.json"), dir.join("b.json"));
    save_rep(&pa, &rep).unwrap();
    save_rep(&pb, &image).unwrap();
    (pa.to_str().unwrap().into(), pb.to_str().unwrap().into())
}

#[test]
fn separate_q_finds_short_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = so4_pair(dir.path());
    let out = soinv(&["separate", "--repA", &a, "--repB", &b, "--invariant", "q", "--maxlen", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "separated");
    assert!(v["witness"].as_str().unwrap().len() <= 4);
}

#[test]
fn separate_trace_is_blind_to_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = so4_pair(dir.path());
    let out = soinv(&["separate", "--repA", &a, "--repB", &b, "--maxlen", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "indistinguishable_to_length");
}

#[test]
fn separate_strict_rejects_non_orthogonal() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({"d": 2, "backend": "exact", "form": "standard", "group": {"kind": "free"},
        "generators": {"1": [["2", "0"], ["0", "0"], ["0", "0"], ["1", "0"]]}});
    let path = write(dir.path(), "bad.json", &doc);
    let out = soinv(&["separate", "--repA", &path, "--repB", &path]);
    assert_eq!(out.status.code(), Some(2));
    let lenient = soinv(&["separate", "--repA", &path, "--repB", &path, "--lenient"]);
    assert!(lenient.status.success(), "{}", String::from_utf8_lossy(&lenient.stderr));
}
