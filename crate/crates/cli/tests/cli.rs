use std::path::Path;
use std::process::Command;

use gradet::{gdet0, graded_trace, io, presets, GradedMatrix};
use serde_json::Value;

fn gradet(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradet")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), doc, String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const QUATERNION_MATRIX: &str = r#"{
  "row_degrees": [[0,0,0],[1,0,1]],
  "entries": [
    [[{"b":"1","c":1}], [{"b":"j","c":1}]],
    [[{"b":"j","c":1}], [{"b":"1","c":1}]]
  ]
}"#;

#[test]
fn golden_gdet0_on_quaternions() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "x.json", QUATERNION_MATRIX);
    for method in ["twist", "leibniz", "crossed"] {
        let (code, doc, _) = gradet(&["gdet0", "--method", method, "--algebra", "preset:quaternions", "--matrix", &m]);
        assert_eq!(code, 0);
        assert_eq!(doc["format"], 1);
        assert_eq!(doc["command"], "gdet0");
        assert_eq!(doc["result"], serde_json::json!([{"b": "1", "c": "2"}]));
        assert_eq!(doc["degree"], serde_json::json!([0, 0, 0]));
        assert!(doc["inputs"]["algebra"].is_string() && doc["inputs"]["matrix"].is_string());
    }
}

#[test]
fn trace_of_identity_counts_parities() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "id.json",
        r#"{"row_degrees": [[0],[0],[1]],
            "entries": [[[{"b":"1","c":1}],[],[]], [[],[{"b":"1","c":1}],[]], [[],[],[{"b":"1","c":1}]]]}"#,
    );
    let (code, doc, _) = gradet(&["trace", "--algebra", "preset:grassmann:2", "--matrix", &m]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"], serde_json::json!([{"b": "1", "c": "1"}]));
}

#[test]
fn unsorted_degrees_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "x.json",
        r#"{"row_degrees": [[1],[0]], "entries": [[[{"b":"1","c":1}],[]], [[],[{"b":"1","c":1}]]]}"#,
    );
    let (code, doc, stderr) = gradet(&["gber", "--algebra", "preset:dual_numbers:1", "--matrix", &m]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["code"], "NotParitySorted");
    assert!(!stderr.is_empty());
}

#[test]
fn degree_override() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "x.json",
        r#"{"row_degrees": [[0],[0]], "entries": [[[{"b":"1","c":1}],[]], [[],[{"b":"1","c":1}]]]}"#,
    );
    let (code, doc, _) = gradet(&["gber", "--algebra", "preset:dual_numbers:1", "--matrix", &m, "--degrees", "[[1],[0]]"]);
    assert_eq!(code, 3);
    assert_eq!(doc["error"]["code"], "NotParitySorted");
    let (code, doc, _) = gradet(&["trace", "--algebra", "preset:dual_numbers:1", "--matrix", &m, "--degrees", "[[1],[0]]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"], serde_json::json!([]));
    assert!(doc["inputs"]["degrees"].is_string());
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let (code, doc, _) = gradet(&["gdet0", "--algebra", "preset:quaternions", "--matrix", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["code"], "ParseError");

    let bad = write(dir.path(), "bad.json", r#"{"row_degrees": [[0,0,0]], "entries": [[[{"b":"q","c":1}]]]}"#);
    let (code, doc, _) = gradet(&["gdet0", "--algebra", "preset:quaternions", "--matrix", &bad]);
    assert_eq!(code, 2);
    assert!(doc["error"]["message"].as_str().unwrap().contains("entries[0][0][0].b"));
}

#[test]
fn math_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "x.json",
        r#"{"row_degrees": [[0],[1]], "entries": [[[{"b":"1","c":1}],[]], [[],[]]]}"#,
    );
    let (code, doc, _) = gradet(&["gber", "--algebra", "preset:dual_numbers:1", "--matrix", &m]);
    assert_eq!(code, 4);
    assert_eq!(doc["error"]["code"], "Singular");
}

#[test]
fn cli_agrees_with_library() {
    let h = presets::quaternions();
    let x = io::matrix_from_json(QUATERNION_MATRIX, &h, None, "x").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "x.json", &io::matrix_to_json(&x).to_string());
    let alg = write(dir.path(), "h.json", &io::algebra_to_json(&h).to_string());

    let (_, doc, _) = gradet(&["gdet0", "--algebra", &alg, "--matrix", &m]);
    let got = io::element_from_json(&doc.to_string(), &h, "out").unwrap();
    assert_eq!(got, gdet0(&x).unwrap());

    let (_, doc, _) = gradet(&["trace", "--algebra", &alg, "--matrix", &m]);
    let got = io::element_from_json(&doc.to_string(), &h, "out").unwrap();
    assert_eq!(got, graded_trace(&x).unwrap());
}

#[test]
fn gdet_with_sigma_file() {
    let h = presets::quaternions();
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "x.json", QUATERNION_MATRIX);
    for sigma in h.ns_multipliers().unwrap() {
        let s = write(dir.path(), "s.json", &io::bicharacter_to_json(&sigma).to_string());
        let (code, doc, _) = gradet(&["gdet", "--algebra", "preset:quaternions", "--matrix", &m, "--sigma", &s]);
        assert_eq!(code, 0);
        let x: GradedMatrix = io::matrix_from_json(QUATERNION_MATRIX, &h, None, "x").unwrap();
        let got = io::element_from_json(&doc.to_string(), &h, "out").unwrap();
        assert_eq!(got, gradet::gdet_sigma(&x, &sigma).unwrap());
    }
}

#[test]
fn solve_sigma_and_twist() {
    let (code, doc, _) = gradet(&["solve-sigma", "--algebra", "preset:clifford:1,1"]);
    assert_eq!(code, 0);
    assert!(doc["result"]["exponents"].is_array());
    let (code, doc, _) = gradet(&["twist", "--algebra", "preset:quaternions"]);
    assert_eq!(code, 0);
    let twisted = io::algebra_from_json(&doc["result"].to_string(), "twist").unwrap();
    assert_eq!(twisted.dim(), 4);
    for a in ["i", "j", "k"] {
        for b in ["i", "j", "k"] {
            let (x, y) = (twisted.basis_element(a), twisted.basis_element(b));
            assert_eq!(&x * &y, &y * &x);
        }
    }
}

#[test]
fn verify_suite() {
    let (code, doc, _) = gradet(&["verify", "--suite", "dual", "--instances", "2", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["passed"], true);
    let (code, _, _) = gradet(&["verify", "--suite", "nonsense"]);
    assert_eq!(code, 3);
}
