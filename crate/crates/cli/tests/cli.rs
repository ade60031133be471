use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn fpk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).expect("stderr is JSON")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn poly_prints_canonical_text() {
    let o = fpk(&["poly", "--law", "Q", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "x2*y1^2 + x1^2*y2 - x1^2*y1^2\n");
    let o = fpk(&["poly", "--law", "K", "--n", "2", "--json"]);
    assert_eq!(stdout_json(&o), json!({"law": "K", "n": 2, "polynomial": "x2*y1^2 + x1^2*y2"}));
}

#[test]
fn semicircle_boxdot_stays_in_family() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!({"family": "semicircle", "a": "1", "r": "2"}));
    let b = write(&dir, "b.json", &json!({"family": "semicircle", "a": "2", "r": "2"}));
    let o = fpk(&["conv", "--op", "boxdot", &a, &b]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o), json!({"family": "semicircle", "a": "2", "r": "2"}));
    let o = fpk(&["conv", "--op", "boxplus", &a, &b]);
    assert_eq!(stdout_json(&o), json!({"family": "semicircle", "a": "3", "r2": "8"}));
}

#[test]
fn sequence_convolution_and_errors() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!({"entries": ["0", "1", "0", "2"]}));
    let b = write(&dir, "b.json", &json!({"entries": ["1", "1", "1", "1"]}));
    let short = write(&dir, "c.json", &json!({"entries": ["1", "2"]}));
    let o = fpk(&["conv", "--op", "boxplus", &a, &b]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["entries"], json!(["1", "2", "4", "9"]));

    let o = fpk(&["conv", "--op", "boxtimes", &a, &short]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "order_mismatch");

    let o = fpk(&["conv", "--op", "squareast", &a, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "first_entry_not_one");

    let bad = write(&dir, "bad.json", &json!({"entries": "nope"}));
    let o = fpk(&["conv", "--op", "boxplus", &bad, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "parse");

    let o = fpk(&["conv", "--op", "boxplus", "/nonexistent.json", &b]);
    assert_eq!(stderr_json(&o)["error"], "parse");
}

#[test]
fn transforms_round_trip() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", &json!({"entries": ["1", "2", "5", "15"]}));
    let o = fpk(&["transform", "--kind", "s", &m]);
    assert!(o.status.success());
    let series = write(&dir, "s.json", &stdout_json(&o));
    let back = fpk(&["transform", "--kind", "s", "--inverse", &series]);
    assert_eq!(stdout_json(&back)["entries"], json!(["1", "2", "5", "15"]));
    let o = fpk(&["transform", "--kind", "log-boxtimes", &m]);
    let v = write(&dir, "v.json", &stdout_json(&o));
    let back = fpk(&["transform", "--kind", "log-boxtimes", "--inverse", &v]);
    assert_eq!(stdout_json(&back)["entries"], json!(["1", "2", "5", "15"]));
}

#[test]
fn witt_commands() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", &json!({"entries": ["1", "2", "3"]}));
    let y = write(&dir, "y.json", &json!({"entries": ["1", "0", "0"]}));
    assert_eq!(stdout_json(&fpk(&["witt", "ghost", &x]))["entries"], json!(["1", "5", "10"]));
    let sum = stdout_json(&fpk(&["witt", "add", &x, &y]));
    assert_eq!(sum["kind"], "witt");
    assert_eq!(sum["entries"], json!(["2", "1", "1"]));
    assert_eq!(stdout_json(&fpk(&["witt", "mul", &x, &y]))["entries"], json!(["1", "2", "3"]));
    assert_eq!(stdout_json(&fpk(&["witt", "ah", &y]))["coeffs"], json!(["1", "1", "1", "1"]));
}

#[test]
fn measure_commands() {
    let dir = TempDir::new().unwrap();
    let semi = write(&dir, "g.json", &json!({"family": "semicircle", "a": "0", "r": "2"}));
    let fp = write(&dir, "p.json", &json!({"family": "free_poisson", "rate": "1", "jump": "2"}));
    let o = fpk(&["measure", "moments", &semi, "--order", "6"]);
    assert_eq!(stdout_json(&o)["entries"], json!(["0", "1", "0", "2", "0", "5"]));
    let o = fpk(&["measure", "cumulants", &fp, "--order", "3"]);
    assert_eq!(stdout_json(&o)["entries"], json!(["2", "4", "8"]));
    let o = fpk(&["measure", "frob", &fp, "--n", "2"]);
    assert_eq!(stdout_json(&o), json!({"family": "free_poisson", "rate": "1", "jump": "4"}));
    let o = fpk(&["measure", "act", &semi, "--scale", "4"]);
    assert_eq!(stdout_json(&o), json!({"family": "semicircle", "a": "0", "r": "4"}));
    let o = fpk(&["measure", "act", &semi, "--shift", "-3"]);
    assert_eq!(stdout_json(&o)["a"], "-3");
    let o = fpk(&["measure", "teich", "--a", "2", "--order", "3"]);
    assert_eq!(stdout_json(&o)["entries"], json!(["2", "4", "8"]));

    let bad = write(&dir, "k.json", &json!({"entries": ["0", "-1", "0", "0", "0", "0"]}));
    let o = fpk(&["measure", "cpd", &bad]);
    assert!(o.status.success());
    let d = stdout_json(&o);
    assert_eq!(d["accepted"], false);
    assert!(d["witness"].is_array());
    let o = fpk(&["measure", "cpd", &semi]);
    assert_eq!(stdout_json(&o)["accepted"], true);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "convex", "--order", "6", "--trials", "5", "--seed", "9", "--json"];
    let (a, b) = (fpk(&args), fpk(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let reports = stdout_json(&a);
    assert_eq!(reports[0]["suite"], "convex");
    assert_eq!(reports[0]["failures"], json!([]));
    assert!(String::from_utf8_lossy(&a.stderr).contains("elapsed_ms"));

    let o = fpk(&["verify", "--suite", "nope", "--order", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "unknown_suite");
}

#[test]
fn usage_errors_are_reported_as_json() {
    let o = fpk(&["conv", "--op", "nonsense", "a", "b"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "usage");
}
