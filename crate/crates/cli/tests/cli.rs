use std::path::PathBuf;
use std::process::{Command, Output};

fn symcomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcomb")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symcomb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_exit_codes() {
    assert_eq!(symcomb(&["verify", "bounded-qr", "--n", "2", "--m", "2"]).status.code(), Some(0));
    let bad = symcomb(&["verify", "bounded-qr", "--n", "2", "--m", "2", "--bind", "flip=4", "--json"]);
    assert_eq!(bad.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(report["status"], "failed");
    assert!(report["first_mismatch"].is_object());
    assert_eq!(symcomb(&["verify", "no-such-identity"]).status.code(), Some(2));
    assert_eq!(symcomb(&["verify", "transform"]).status.code(), Some(2));
    assert_eq!(symcomb(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn empty_and_perturbed_suites() {
    let empty = scratch("empty.toml", "");
    let out = symcomb(&["suite", empty.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["reports"].as_array().unwrap().len(), 0);

    let perturbed = scratch("perturbed.toml", "[[verify]]\nidentity = \"bounded-qr\"\nn = 2\nm = 2\nflip = 7\n");
    let out = symcomb(&["suite", perturbed.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["reports"][0]["first_mismatch"]["monomial"].is_string());

    let broken = scratch("broken.toml", "[[verify]]\nidentity = 3\n");
    assert_eq!(symcomb(&["suite", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn suite_output_is_byte_deterministic() {
    let config = scratch("small.toml", "[[verify]]\nidentity = \"ast-theorem\"\nn = \"1..4\"\n\n[[verify]]\nidentity = \"transform\"\nm = \"0..5\"\n");
    let a = symcomb(&["suite", config.to_str().unwrap(), "--json", "--threads", "1"]);
    let b = symcomb(&["suite", config.to_str().unwrap(), "--json", "--threads", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_and_friends() {
    let out = symcomb(&["enumerate", "agtp", "--bottom", "0,1", "--json"]);
    let list: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let first = &list[0];
    assert!(first["entries"].is_array() && first["decorations"][0][0].is_string());

    let out = symcomb(&["paths", "enumerate", "--n", "2", "--m", "3", "--mode", "below", "--json"]);
    let fams: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(fams.as_array().unwrap().len(), 10);

    let out = symcomb(&["ast", "count", "--n", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "42");

    let out = symcomb(&["formula", "--w", "-1", "--n", "3", "--m", "2", "--check"]);
    assert_eq!(out.status.code(), Some(0));

    let matrix = scratch("a.json", "[[1,1],[1,0]]");
    let out = symcomb(&["rsk", "forward", "--matrix", matrix.to_str().unwrap(), "--json"]);
    let rows: Vec<Vec<u32>> = serde_json::from_slice(&out.stdout).unwrap();
    let tableau = scratch("t.json", &serde_json::to_string(&rows).unwrap());
    let out = symcomb(&["rsk", "inverse", "--tableau", tableau.to_str().unwrap(), "--n", "2", "--json"]);
    let back: Vec<Vec<u32>> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(back, vec![vec![1, 1], vec![1, 0]]);
}
