use std::path::PathBuf;
use std::process::{Command, Output};

fn lkpolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lkpolar")).args(args).output().expect("binary runs")
}

fn scene(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn quadrant_table() {
    let o = lkpolar(&["invariants", &scene("quadrant.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0.750000000000"));
    assert!(text.contains("0.892699081699"));
}

#[test]
fn quadrant_json_values() {
    let o = lkpolar(&["invariants", &scene("quadrant.json"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let obj = &doc["objects"][0];
    let get = |k: &str, i: usize| obj[k][i].as_f64().unwrap();
    assert_eq!(get("sigma", 1), 0.75);
    assert_eq!(get("sigma", 2), 0.25);
    assert!((get("lambda_loc", 1) - (0.5 + std::f64::consts::PI / 8.0)).abs() < 1e-12);
    assert_eq!(obj["angle_sum_residual"].as_f64().unwrap(), 0.0);
}

#[test]
fn machine_output_is_repeatable() {
    for format in ["json", "csv"] {
        let args = ["invariants", &scene("two_quadrants.json"), "--samples", "5000", "--seed", "3", "--format", format];
        let a = lkpolar(&args);
        let b = lkpolar(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn verify_two_quadrants_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = lkpolar(&[
        "verify",
        &scene("two_quadrants.json"),
        "--samples",
        "200000",
        "--seed",
        "7",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let lines = doc["comparisons"].as_array().unwrap();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|c| c["z"].as_f64().unwrap().abs() <= 4.0));
    assert_eq!(doc["pass"], serde_json::Value::Bool(true));
}

#[test]
fn matrix_two() {
    let o = lkpolar(&["matrix", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("m_1^1 = 1.00000000000000\n"));
    assert!(text.contains("m_1^2 = 0.570796326794897\n"));
    assert!(text.contains("m_2^2 = 1.00000000000000\n"));
}

#[test]
fn polytope_square() {
    let o = lkpolar(&["polytope", &scene("polytopes.json"), "--object", "square"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2.00000000000000"));
    assert!(text.contains("3.14159265358979"));
}

#[test]
fn sample_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cones.json");
    let o = lkpolar(&[
        "sample",
        "--dim",
        "3",
        "--generators",
        "5",
        "--count",
        "6",
        "--seed",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let (scene, objects) = lkpolar::cli::scene::parse_scene(&text, &path).unwrap();
    assert_eq!(objects.len(), 6);
    assert_eq!(scene.to_json(), text);
    let again = dir.path().join("again.json");
    lkpolar(&[
        "sample",
        "--dim",
        "3",
        "--generators",
        "5",
        "--count",
        "6",
        "--seed",
        "2",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&again).unwrap(), text.as_bytes());
    let o = lkpolar(&["invariants", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn syntax_errors_name_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"version\": 1,\n  \"objects\": [,]\n}\n").unwrap();
    let o = lkpolar(&["invariants", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("broken.json:3:"), "{}", stderr(&o));
}

#[test]
fn invalid_objects_name_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = "{\n  \"version\": 1,\n  \"objects\": [\n    { \"name\": \"ok\", \"kind\": \"cone\", \"ambient_dim\": 2,\n      \"data\": { \"generators\": [[1, 0]] } },\n    { \"name\": \"bad\", \"kind\": \"cone\", \"ambient_dim\": 2,\n      \"data\": { \"generators\": [[1, 0, 0]] } }\n  ]\n}\n";
    std::fs::write(&path, text).unwrap();
    let o = lkpolar(&["invariants", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:6: object \"bad\""), "{}", stderr(&o));
}

#[test]
fn polytope_is_not_a_germ() {
    let o = lkpolar(&["invariants", &scene("polytopes.json"), "--object", "cube"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lkpolar(&["polytope", &scene("quadrant.json"), "--object", "quadrant"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lkpolar(&["polytope", &scene("polytopes.json"), "--object", "missing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lkpolar(&[]).status.code(), Some(2));
    assert_eq!(lkpolar(&["matrix", "--dim", "two"]).status.code(), Some(2));
    assert_eq!(lkpolar(&["invariants", &scene("quadrant.json"), "--format", "xml"]).status.code(), Some(2));
    assert_eq!(lkpolar(&["verify", &scene("quadrant.json"), "--samples", "10"]).status.code(), Some(2));
    assert_eq!(lkpolar(&["--version"]).status.code(), Some(0));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["invariants", &scene("two_quadrants.json"), "--samples", "5000", "--format", "json"];
    let runs: Vec<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|t| {
            Command::new(env!("CARGO_BIN_EXE_lkpolar")).env("LKPOLAR_THREADS", t).args(args).output().unwrap().stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let bad = Command::new(env!("CARGO_BIN_EXE_lkpolar")).env("LKPOLAR_THREADS", "0").args(args).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
