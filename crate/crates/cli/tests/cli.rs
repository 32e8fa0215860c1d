use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn transval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn json_out(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON object")
}

const U23: &str = r#"{"rows":[["0","0","inf"],["0","inf","0"]]}"#;

#[test]
fn stiefel_of_u23() {
    let f = file(U23);
    let v = json_out(&transval(&["stiefel", f.path().to_str().unwrap()]));
    for key in ["1,2", "1,3", "2,3"] {
        assert_eq!(v["valuated"]["values"][key], "0");
    }
    assert_eq!(v["labels"].as_array().unwrap().len(), 3);
    assert_eq!(v["underlying"]["bases"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_token_is_an_input_error() {
    let f = file(r#"{"rows":[["in f","0"],["0","0"]]}"#);
    let out = transval(&["stiefel", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "input");
}

#[test]
fn constant_infinity_exits_two() {
    let f = file(r#"{"rows":[["inf","inf"],["inf","inf"]]}"#);
    let out = transval(&["stiefel", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"].is_string());
}

#[test]
fn custom_labels_and_star() {
    let f = file(r#"{"labels":["a","b","c"],"rows":[["0","0","inf"],["0","inf","0"]]}"#);
    let x = file(r#"{"x":["1","inf"]}"#);
    let v = json_out(&transval(&[
        "extend",
        f.path().to_str().unwrap(),
        x.path().to_str().unwrap(),
    ]));
    let labels: Vec<&str> = v["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["a", "b", "c", "*"]);
    assert_eq!(v["extension"]["values"]["a,*"], "1");
    assert_eq!(v["extension"]["values"]["b,*"], "inf");
    assert_eq!(v["extension"]["values"]["c,*"], "1");
}

#[test]
fn check_pluecker_reports_violation() {
    let f = file(
        r#"{"n":4,"d":2,"values":{"1,2":"-1","1,3":"0","1,4":"0","2,3":"0","2,4":"0","3,4":"-1"}}"#,
    );
    let v = json_out(&transval(&["check-pluecker", f.path().to_str().unwrap()]));
    assert_eq!(v["valuated"], false);
    assert!(v["witness"].is_object());
}

#[test]
fn dapx_and_minimality() {
    let f = file(r#"{"rows":[["1","0","0","inf"],["0","0","0","0"]]}"#);
    let path = f.path().to_str().unwrap();
    let v = json_out(&transval(&["dapx", path]));
    assert_eq!(
        v["dapx"]["rows"],
        serde_json::json!([["1", "0", "0", "1"], ["0", "0", "0", "0"]])
    );
    let m = json_out(&transval(&["is-minimal", path]));
    assert_eq!(m["minimal"], false);
    let c = json_out(&transval(&["collide", path]));
    assert_ne!(c["x"], c["y"]);
    let min = json_out(&transval(&["minimize", path]));
    let g = file(&min["minimal"].to_string());
    assert_eq!(
        json_out(&transval(&["is-minimal", g.path().to_str().unwrap()]))["minimal"],
        true
    );
}

#[test]
fn verify_join_passes() {
    let v = json_out(&transval(&[
        "verify", "join", "--n", "4", "--d", "2", "--count", "100", "--seed", "7",
    ]));
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["passed"], 100);
}

#[test]
fn lab_lines_and_cap() {
    let out = transval(&[
        "lab", "--n", "3", "--d", "2", "--trials", "10", "--seed", "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
    for line in text.lines() {
        let _: Value = serde_json::from_str(line).unwrap();
    }
    let capped = transval(&[
        "lab", "--n", "6", "--d", "2", "--trials", "1", "--seed", "1",
    ]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr_json(&capped)["message"]
        .as_str()
        .unwrap()
        .contains("lab size cap"));
}

#[test]
fn pinned_report() {
    let out = transval(&["lab", "--pinned", "u23"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["is_valuated"], true);
    assert!(v["min"].as_object().unwrap().values().all(|x| x == "0"));
}

#[test]
fn output_is_deterministic() {
    let a = transval(&[
        "gen", "--n", "5", "--d", "3", "--count", "20", "--seed", "11",
    ]);
    let b = transval(&[
        "gen", "--n", "5", "--d", "3", "--count", "20", "--seed", "11",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = transval(&[
        "lab", "--n", "4", "--d", "2", "--trials", "5", "--seed", "3",
    ]);
    let b = transval(&[
        "lab", "--n", "4", "--d", "2", "--trials", "5", "--seed", "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn present_min_round_trip() {
    let f = file(r#"{"labels":["1","2","3","*"],"rows":[["1","0","0","inf"],["0","0","0","0"]]}"#);
    let v = json_out(&transval(&["present-min", f.path().to_str().unwrap()]));
    let aug = file(&v["augmented"].to_string());
    let back = json_out(&transval(&["stiefel", aug.path().to_str().unwrap()]));
    let orig = json_out(&transval(&["stiefel", f.path().to_str().unwrap()]));
    let num = |v: &Value| -> Option<f64> {
        let s = v.as_str().unwrap();
        match s.split_once('/') {
            _ if s == "inf" => None,
            Some((p, q)) => Some(p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()),
            None => Some(s.parse().unwrap()),
        }
    };
    let (b, o) = (
        back["valuated"]["values"].as_object().unwrap(),
        orig["valuated"]["values"].as_object().unwrap(),
    );
    assert_eq!(b.keys().collect::<Vec<_>>(), o.keys().collect::<Vec<_>>());
    let diffs: Vec<f64> = o
        .keys()
        .filter_map(|k| Some(num(&b[k])? - num(&o[k])?))
        .collect();
    assert!(diffs.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(
        o.keys().filter(|k| num(&o[*k]).is_some()).count(),
        diffs.len()
    );
}

#[test]
fn missing_file_is_an_input_error() {
    let out = transval(&["decompose", "/nonexistent/matrix.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "input");
}
