use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sparse-thue"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("THUE_PRECISION_CEILING").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const CUBE: &str = r#"{"terms":[{"coeff":"1","exp":3},{"coeff":"-2","exp":0}]}"#;

#[test]
fn analyze_cube_root_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", CUBE);
    let out = run(&["analyze", "--form", &f, "--h", "10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["discriminant"], "-108");
    assert_eq!(v["mahler_exact"], "2");
    let b = v["thresholds"]["b"]["value"].as_f64().unwrap();
    assert!((b - 320.0).abs() < 1e-9);
    let log10 = v["thresholds"]["b"]["log10"].as_f64().unwrap();
    assert!((log10 - 320f64.log10()).abs() < 1e-12);
    assert_eq!(v["straight_line"], true);
}

#[test]
fn analyze_pm1_form() {
    let out = run(&[
        "analyze",
        "--inline",
        r#"{"terms":[{"coeff":"1","exp":0},{"coeff":"-1","exp":2},{"coeff":"1","exp":7}]}"#,
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["straight_line"], true);
    assert_eq!(v["polygon"]["slopes"][0]["value"].as_f64(), Some(0.0));
}

#[test]
fn invalid_form_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(
        dir.path(),
        "dup.json",
        r#"{"terms":[{"coeff":"1","exp":0},{"coeff":"1","exp":3},{"coeff":"1","exp":0}]}"#,
    );
    for cmd in ["analyze", "enumerate", "verify"] {
        let out = run(&[cmd, "--form", &dup]);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("more than once"));
    }
    let missing = dir.path().join("nope.json");
    let out = run(&["analyze", "--form", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let garbage = write(dir.path(), "g.json", "not json");
    assert_eq!(run(&["analyze", "--form", &garbage]).status.code(), Some(2));
}

#[test]
fn enumerate_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", CUBE);
    let csv_path = dir.path().join("c.csv");
    let out = run(&[
        "enumerate",
        "--form",
        &f,
        "--h",
        "10",
        "--box",
        "1e3",
        "--workers",
        "3",
        "-o",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["x", "y", "value", "primitive", "log_height", "class", "nearest_root", "log_distance"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert!(rows.iter().any(|r| &r[0] == "1" && &r[1] == "1" && &r[2] == "-1"));
    assert!(rows.iter().any(|r| &r[0] == "0" && &r[1] == "0"));

    let out = run(&["enumerate", "--form", &f, "--h", "10", "--box", "1000", "--format", "json", "--workers", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"].as_u64().unwrap() as usize, rows.len());
}

#[test]
fn verify_single_and_filtered() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", CUBE);
    let out = run(&["verify", "--form", &f, "--h", "100", "--box", "2000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 9);
    for r in v["reports"].as_array().unwrap() {
        for key in ["lemma", "hypotheses_met", "checked", "violations", "precision_bits"] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }

    let out = run(&["verify", "--form", &f, "--h", "100", "--checks", "lewis-mahler"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reps = v["reports"].as_array().unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(reps[0]["lemma"], "lewis-mahler");

    let out = run(&["verify", "--form", &f, "--checks", "lemma-9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn self_test_exits_1() {
    let out = run(&["verify", "--self-test"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["violations"], 3);
}

#[test]
fn corpus_verifies() {
    let out = run(&["verify", "--corpus", "--box", "1000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 20);
}

#[test]
fn ceiling_from_environment() {
    // A ceiling below the starting precision is rejected as a bad config.
    let out = bin()
        .args(["verify", "--inline", CUBE])
        .env("THUE_PRECISION_CEILING", "32")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ceiling"));
}

#[test]
fn sweep_is_deterministic() {
    let args = ["sweep", "--family", "pm1", "--count", "10", "--seed", "1", "--r", "15", "--workers", "2"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut rdr = csv::Reader::from_reader(&a.stdout[..]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 10);
    let hdr = rdr.headers().unwrap().clone();
    let col = |name: &str| hdr.iter().position(|h| h == name).unwrap();
    for r in &rows {
        assert_eq!(&r[col("straight_line")], "true");
        assert_eq!(&r[col("passed")], "true");
    }

    let g = run(&["sweep", "--family", "gapped", "--count", "5", "--seed", "2", "--r", "12", "--gap", "3"]);
    assert!(g.status.success());
}
