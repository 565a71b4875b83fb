use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nilary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilary"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn write_grid(dir: &tempfile::TempDir, body: &str) -> String {
    let p = dir.path().join("g.grid");
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_example() {
    let out = nilary(&["check", "Z3[C6]", "--property", "nilary", "--expect", "true"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["value"], false);
    assert_eq!(v["witness"]["ideal_pair"][0], "2+2x^3");
    assert_eq!(v["witness"]["ideal_pair"][1], "2+x^3");

    let out = nilary(&["check", "Z6", "--property", "prime"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["witness"]["a"].as_str(), v["witness"]["b"].as_str()), (Some("2"), Some("3")));
}

#[test]
fn check_with_an_ideal() {
    let out = nilary(&["check", "Z4", "--property", "prime", "--ideal", "2", "--expect", "true"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ideal"]["size"], 2);
    let out = nilary(&["check", "Z4", "--property", "prime", "--ideal", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_matrix() {
    for bad in ["Z1", "C2", "Z4["] {
        let out = nilary(&["check", bad, "--property", "prime"]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("offset"), "{err}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(nilary(&["check", "Z2", "--property", "bogus"]).status.code(), Some(2));
    assert_eq!(nilary(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nilary(&["check", "Z2", "--property", "prime", "--expect", "true"]).status.code(), Some(0));
    assert_eq!(nilary(&["check", "Z2", "--property", "prime", "--expect", "false"]).status.code(), Some(1));
    // 2^21 elements is above the ring cap.
    assert_eq!(nilary(&["check", "Z2[C21]", "--property", "prime"]).status.code(), Some(3));
}

#[test]
fn verify_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_grid(&dir, r#"{"exprs": ["Z2[C2]", "Z3[S3]"]}"#);
    let out = nilary(&["verify", "L1.8,T-nnilp", "--grid", &g]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["total"], 4);
    assert_eq!(v["summary"]["refuted"], 0);

    let g = write_grid(&dir, r#"{"exprs": ["Z3[S3]"], "caps": {"max_pair_size": 16}}"#);
    let out = nilary(&["verify", "C2.2", "--grid", &g]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["reports"][0]["verdict"], "undecided-cap");

    assert_eq!(nilary(&["verify", "nope", "--grid", &g]).status.code(), Some(2));
    assert_eq!(nilary(&["verify", "L1.8", "--grid", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_grid(&dir, r#"{"exprs": ["Z2[S3]", "Z4[C2]", "Z3[C3]"]}"#);
    let args = ["verify", "all", "--grid", &g, "--no-timing"];
    let a = nilary(&args);
    let b = nilary(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let g = write_grid(&dir, r#"{"exprs": ["Z2[C2]"]}"#);
    let first = nilary(&["verify", "L1.8", "--grid", &g, "--cache", cache]);
    let second = nilary(&["verify", "L1.8", "--grid", &g, "--cache", cache]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_dir(cache).unwrap().count(), 1);
    let c1 = nilary(&["check", "Z2[C2]", "--property", "prime", "--cache", cache, "--no-timing"]);
    let c2 = nilary(&["check", "Z2[C2]", "--property", "prime", "--cache", cache, "--no-timing"]);
    assert_eq!(c1.stdout, c2.stdout);
    assert_eq!(std::fs::read_dir(cache).unwrap().count(), 2);
}

#[test]
fn out_file_and_listing() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("reg.json");
    let out = nilary(&["registry", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    let e214 = v.as_array().unwrap().iter().find(|e| e["id"] == "E2.14").unwrap();
    assert_eq!(e214["anchor"], "Hence A[G] is not nilary.");
}

#[test]
fn search_targets() {
    let out = nilary(&["search", "question1", "--grid", &data("final-theorem.grid")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "vacuous");
    let dir = tempfile::tempdir().unwrap();
    let g = write_grid(&dir, r#"{"exprs": ["Z4[C2]"]}"#);
    let out = nilary(&["search", "question2", "--grid", &g]);
    assert_eq!(json(&out)["cases"][0]["status"], "confirmed");
    assert_eq!(nilary(&["search", "question9", "--grid", &g]).status.code(), Some(2));
}

#[test]
fn info_reports_structure() {
    let out = nilary(&["info", "Z2[S3]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], 64);
    assert_eq!(v["augmentation_ideal"]["size"], 32);
    assert_eq!(v["relative_augmentation_ideals"].as_array().unwrap().len(), 3);
}
