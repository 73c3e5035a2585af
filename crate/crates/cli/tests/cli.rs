use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn gradloci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradloci"))
        .args(args)
        .env_remove("GRADLOCI_BUDGET")
        .env_remove("GRADLOCI_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn descriptor(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

const SQUARE_ROOT_PAIR: &str = r#"{"params":["a"],"vars":["x","y","z"],"weights":[2,2,1],
    "generators":["a*x + z^2","a*y + z^2"],"equidimensional":true}"#;

const TWO_LINES: &str = r#"{"params":["a","b"],"vars":["x","y"],"weights":[1,1],
    "generators":["a*x","b*y^2"],"dimension":2}"#;

#[test]
fn zero_section_locus_is_the_origin() {
    let f = descriptor(SQUARE_ROOT_PAIR);
    let v = json(&gradloci(&["analyze", f.path().to_str().unwrap(), "--mode=sing0", "--json"]));
    assert_eq!(v["results"]["vanishing_ideal"], serde_json::json!(["a^2"]));
    assert_eq!(v["passed"], true);
}

#[test]
fn vertex_locus_is_b_nonzero() {
    let f = descriptor(TWO_LINES);
    let v = json(&gradloci(&["analyze", f.path().to_str().unwrap(), "--mode=singv", "--json"]));
    // {ab != 0} ∪ {a = 0, b != 0} = {b != 0}
    let cells = v["results"]["locus"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert_eq!(v["results"]["locus_text"], "𝔸 \\ V(a*b) ∪ V(a) \\ V(b)");
}

#[test]
fn reports_are_deterministic() {
    let f = descriptor(TWO_LINES);
    let p = f.path().to_str().unwrap();
    for mode in ["lin-matrix", "sing0", "singv", "sings"] {
        let a = json(&gradloci(&["analyze", p, &format!("--mode={mode}"), "--json", "--verbose"]));
        let b = json(&gradloci(&["analyze", p, &format!("--mode={mode}"), "--json", "--verbose"]));
        assert_eq!(without_timing(a), without_timing(b), "{mode}");
    }
}

#[test]
fn scheme_summary() {
    let f = descriptor(r#"["1","x","y","z","z^2"]"#);
    let v = json(&gradloci(&["bbs", f.path().to_str().unwrap(), "--json"]));
    let r = &v["results"];
    assert_eq!((r["mu"].as_u64(), r["nu"].as_u64()), (Some(5), Some(8)));
    assert_eq!(r["coefficients"], 40);
    assert_eq!(r["generators"], 60);
    assert_eq!(r["maxdeg"], true);
    assert_eq!(r["degree_zero"], serde_json::json!(["c51", "c52", "c53", "c54", "c55"]));
}

#[test]
fn exit_codes() {
    let missing = gradloci(&["analyze", "/nonexistent/descriptor.json", "--mode=sing0"]);
    assert_eq!(missing.status.code(), Some(2));
    let f = descriptor(r#"{"vars":["x"],"generators":["x"],"unknown":true}"#);
    let bad = gradloci(&["analyze", f.path().to_str().unwrap(), "--mode=sing0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(gradloci(&["fixtures", "nope"]).status.code(), Some(2));
    let f = descriptor(TWO_LINES);
    let tight = gradloci(&["analyze", f.path().to_str().unwrap(), "--mode=singv", "--budget=1"]);
    assert_eq!(tight.status.code(), Some(3), "{}", String::from_utf8_lossy(&tight.stderr));
    assert_eq!(gradloci(&["fixtures", "ex6_10"]).status.code(), Some(0));
    // the intersection claim of this fixture does not hold
    assert_eq!(gradloci(&["fixtures", "ex6_7"]).status.code(), Some(1));
}

#[test]
fn budget_from_environment() {
    let f = descriptor(TWO_LINES);
    let out = Command::new(env!("CARGO_BIN_EXE_gradloci"))
        .args(["analyze", f.path().to_str().unwrap(), "--mode=singv"])
        .env("GRADLOCI_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fixture_report_lists_checks() {
    let v = json(&gradloci(&["fixtures", "ex5_lin0", "--json"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["results"]["checks"][0]["detail"], "a^2*x2 - a*x1 + x2");
    let out = gradloci(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 14);
}
