use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TETRA: &str = r#"{"vertices": [[0,0,0],[1,0,0],[0.5,0.8660254037844386,0],[0.5,0.28867513459481287,0.816496580927726]]}"#;
const INVERTED_HALF: &str = r#"{"vertices": [[0,0,0],[-0.5,0,0],[-0.25,-0.4330127018922193,0],[-0.25,-0.14433756729740643,-0.408248290463863]]}"#;

fn umbra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbra")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> TempDir {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("tetra.json"), TETRA).unwrap();
    fs::write(dir.path().join("inv.json"), INVERTED_HALF).unwrap();
    dir
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn shadow_along_z_is_the_base_triangle() {
    let d = setup();
    let o = umbra(&["shadow", "--body", &p(&d, "tetra.json"), "--dir", "0,0,1", "--svg", &p(&d, "s.svg")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    let svg = fs::read_to_string(d.path().join("s.svg")).unwrap();
    assert!(svg.contains("<!-- viewport:") && svg.contains(" Z\""));
}

#[test]
fn negative_direction_components_parse() {
    let d = setup();
    let o = umbra(&["shadow", "--body", &p(&d, "tetra.json"), "--dir", "-1,0,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = umbra(&["shadow", "--body", &p(&d, "tetra.json"), "--rotation", "30,45", "--degrees"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn validation_failures_exit_with_one() {
    let d = setup();
    let t = p(&d, "tetra.json");
    assert_eq!(umbra(&["min-inradius", "--body", &t, "--n", "0"]).status.code(), Some(1));
    assert_eq!(umbra(&["min-inradius", "--body", &t, "--bogus"]).status.code(), Some(1));
    assert_eq!(umbra(&["scenario", "nope"]).status.code(), Some(1));
    assert_eq!(umbra(&["shadow", "--body", &t, "--dir", "0,0,0"]).status.code(), Some(1));
    assert_eq!(umbra(&["minkowski", "--a", &t, "--b", &t, "--mu", "1.5"]).status.code(), Some(1));
    assert_eq!(umbra(&["steiner", "--body", &t, "--r", "-1"]).status.code(), Some(1));
    assert_eq!(umbra(&["--threads", "0", "scenario", "lemma3"]).status.code(), Some(1));
    assert_eq!(umbra(&["steiner", "--body", &p(&d, "missing.json"), "--r", "1"]).status.code(), Some(1));
}

#[test]
fn malformed_body_reports_file_and_line() {
    let d = setup();
    fs::write(d.path().join("bad.json"), "{\n  \"vertices\": [[0,0,0],\n    [1,0,]]\n}\n").unwrap();
    let o = umbra(&["steiner", "--body", &p(&d, "bad.json"), "--r", "0.1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.json:3:"), "{err}");
}

#[test]
fn tetra_tetra_scenario_prints_ratio() {
    let o = umbra(&["scenario", "tetra-tetra", "--n", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1.163358"));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let d = setup();
    let run = |tag: &str, threads: &str| {
        let (j, c) = (p(&d, &format!("{tag}.json")), p(&d, &format!("{tag}.csv")));
        let o = umbra(&["--threads", threads, "scenario", "lemma4", "--n", "3000", "--json", &j, "--csv", &c]);
        assert_eq!(o.status.code(), Some(0));
        (fs::read(j).unwrap(), fs::read(c).unwrap(), o.stdout)
    };
    let a = run("a", "1");
    let b = run("b", "1");
    let c = run("c", "4");
    assert_eq!(a, b);
    assert_eq!(a, c);
    let csv = String::from_utf8(a.1).unwrap();
    assert!(csv.starts_with("key,computed,expected,tolerance,tag,pass\n"));
}

#[test]
fn hide_check_report() {
    let d = setup();
    let report = p(&d, "report.json");
    let o = umbra(&["hide-check", "--a", &p(&d, "inv.json"), "--b", &p(&d, "tetra.json"), "--n", "2000", "--report", &report]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["failures"], 0);
    let full: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(full["records"].as_array().unwrap().len(), 2000);
}

#[test]
fn max_hide_scale_of_inverted_half_is_one() {
    let d = setup();
    let o = umbra(&["max-hide-scale", "--a", &p(&d, "inv.json"), "--b", &p(&d, "tetra.json"), "--n", "2000"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["scale"].as_f64().unwrap() - 1.0).abs() < 1e-4);
}

#[test]
fn body_commands() {
    let d = setup();
    let (t, i) = (p(&d, "tetra.json"), p(&d, "inv.json"));
    let sum = p(&d, "sum.json");
    let o = umbra(&["minkowski", "--a", &t, "--b", &i, "--mu", "0.5", "--out", &sum]);
    assert_eq!(o.status.code(), Some(0));
    assert!(Path::new(&sum).exists());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], 12);

    let o = umbra(&["steiner", "--body", &t, "--r", "0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["steiner_volume"].as_f64().unwrap() - 2f64.sqrt() / 12.0).abs() < 1e-15);

    let o = umbra(&["mixed-volumes", "--a", &t, "--b", &i]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vol = 2f64.sqrt() / 12.0;
    assert!((v["v_aab"].as_f64().unwrap() - 1.5 * vol).abs() < 1e-9);
    assert!((v["v_abb"].as_f64().unwrap() - 0.75 * vol).abs() < 1e-9);
}

#[test]
fn optimize_writes_curve() {
    let d = setup();
    let (csv, svg) = (p(&d, "curve.csv"), p(&d, "curve.svg"));
    let o = umbra(&["optimize", "--scenario", "tetra-tetra", "--curve", &csv, "--svg", &svg]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["optimum"]["argmax"].as_f64().unwrap() - 0.7712104).abs() < 1e-7);
    assert_eq!(fs::read_to_string(csv).unwrap().lines().count(), 102);
    assert!(fs::read_to_string(svg).unwrap().contains("max at x = 0.77"));
}
