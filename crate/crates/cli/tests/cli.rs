use std::path::Path;
use std::process::{Command, Output};

fn octavic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octavic"))
        .args(args)
        .env_remove("OCTAVIC_RELATIONS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn invariants_of_x7_minus_1() {
    let o = octavic(&["invariants", "x^7-1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("[0, 0, 0, 0, 0, -395300640, 0]"), "{out}");
    assert!(out.contains("normalized        [0, 0, 0, 0, 0, 1, 0]"), "{out}");
    assert!(out.contains("1.000000 (|J7| = 1)"), "{out}");
}

#[test]
fn invariants_of_x8_minus_1() {
    let o = octavic(&["invariants", "--json", "y^2 = x^8 - 1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["point"],
        serde_json::json!([-280, 0, 2458624, 0, 3855122432i64, 0, -15112079933440i64])
    );
    assert_eq!(v["normalized"], serde_json::json!([-5, 0, 784, 0, 21952, 0, -1536640]));
}

#[test]
fn coefficient_input_matches_polynomial_input() {
    let a = octavic(&["invariants", "x^8+x+1"]);
    let b = octavic(&["invariants", "1,1,0,0,0,0,0,0,1"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn bad_and_singular_inputs() {
    assert_eq!(octavic(&["invariants", "x^5+1"]).status.code(), Some(1));
    let o = octavic(&["invariants", "x^8-2*x^4+1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("discriminant vanishes"));
    assert_eq!(octavic(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(octavic(&["normalize", "1,2,3"]).status.code(), Some(1));
    assert_eq!(octavic(&["--help"]).status.code(), Some(0));
}

#[test]
fn derive_rejects_too_few_samples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = octavic(&["derive", "--samples", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("need at least 2320"));
    assert!(!out.exists());
}

#[test]
fn corrupted_relations_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bundled = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/relations.json")).unwrap();
    let tampered = bundled.replacen("-8396276768438180406206922752/", "-8396276768438180406206922753/", 1);
    assert_ne!(bundled, tampered);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, tampered).unwrap();
    let o = octavic(&["--relations", path.to_str().unwrap(), "check", "0,0,0,0,0,1,0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_normalize_height() {
    let o = octavic(&["check", "--json", "0,0,0,0,0,1,0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["syzygy_check"], true);
    assert_eq!(v["disc_check"], true);

    let o = octavic(&["normalize", "--json", "[0,0,0,0,0,-480,0]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["absolute_minimal"], serde_json::json!([0, 0, 0, 0, 0, -1, 0]));
    assert_eq!(v["normalized"], serde_json::json!([0, 0, 0, 0, 0, 1, 0]));
    assert_eq!(v["sign_flips"], serde_json::json!(["J7"]));

    let o = octavic(&["height", "0,0,3,0,0,0,-5", "--leq", "1.5"]);
    let out = stdout(&o);
    assert!(out.contains("|J4| = 3"), "{out}");
    assert!(out.contains("height <= 3/2: true"), "{out}");
}

#[test]
fn build_height_one_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for workers in ["8", "1"] {
        let path = dir.path().join(format!("db{workers}.csv"));
        let o = octavic(&["build", "--height", "1", "--workers", workers, "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(
            v["counts"],
            serde_json::json!({"enumerated": 2186, "syzygy_pass": 34, "disc_pass": 24, "minimal": 24, "normalized_unique": 12})
        );
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let text = String::from_utf8(files.remove(0)).unwrap();
    assert!(text.contains("# relations c2f22432"));
    assert!(text.contains("# version"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 13);

    let jsonl = dir.path().join("db.jsonl");
    let o = octavic(&["build", "--height", "1.0", "--format", "jsonl", "--out", jsonl.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&jsonl).unwrap().lines().count(), 13);
}

#[test]
fn build_below_one_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let o = octavic(&["build", "--height", "1/2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tsuyumine_is_labelled_experimental() {
    let o = octavic(&["tsuyumine", "--json", "x^8+x+1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["experimental"], true);
    assert_eq!(v["values"].as_array().unwrap().len(), 9);
}
