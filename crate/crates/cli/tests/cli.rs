//! End-to-end runs of the binary.

use std::process::Command;

fn stabmod(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_stabmod")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn boundary_of_worked_example() {
    let (code, out, _) = stabmod(&["boundary", "--code", "zoo:split", "--normal", "0,1"]);
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["result"]["secondaries"], true);
    assert_eq!(r["result"]["gram"][0][1], "1 + 1*x1^-1");
    assert_eq!(r["result"]["e"]["metric_group"]["order"], 1);
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn wen_needs_coarse_graining() {
    let (_, out, _) = stabmod(&["boundary", "--code", "zoo:wen", "--normal", "0,1"]);
    assert_eq!(json(&out)["result"]["e"]["metabolic"], false);
    let (_, out, _) = stabmod(&["boundary", "--code", "zoo:wen", "--normal", "0,1", "--coarse", "2"]);
    let r = json(&out);
    assert_eq!(r["result"]["e"]["metabolic"], true);
    assert_eq!(r["result"]["e"]["stable_lagrangians"].as_array().unwrap().len(), 2);
}

#[test]
fn fixture_files_load() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let (code, out, _) = stabmod(&["charges", "--code", &format!("{dir}/toric.json")]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["result"]["order"], 4);
}

#[test]
fn broken_file_exits_with_error() {
    let dir = std::env::temp_dir().join("stabmod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\"format_version\": 1,\n \"modulus\": 3,\n \"dimension\": 2, \"sites\": 2,\n \"sigma\": [[\"1 + x^-1\", \"0\"], [\"1 + y^-1\", \"0\"], [\"0\", \"1 + y\"], [\"0\", \"1 + x\"]]}").unwrap();
    let (code, _, err) = stabmod(&["check", "--code", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("0 and 1"), "{err}");
}

#[test]
fn unsupported_rings_exit_with_two() {
    let (code, out, _) = stabmod(&["witt", "--code", "zoo:toric6"]);
    assert_eq!(code, 2, "{out}");
    assert!(!json(&out)["partial"].as_array().unwrap().is_empty());
}

#[test]
fn witt_on_a_form_file() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let (code, out, _) = stabmod(&["witt", "--code", &format!("{dir}/form_z4.json")]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["result"]["reduction"]["metabolicity_preserved"], true);
}
