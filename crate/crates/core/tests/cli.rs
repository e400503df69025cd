use std::path::Path;
use std::process::{Command, Output};

use spinsqueeze::cli::{execute, RunConfig};
use spinsqueeze::table::CsvTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinsqueeze"))
        .args(args)
        .env("SPINSQUEEZE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        run_ok(&[
            "sweep", "--method", "ed", "-d", "1", "-L", "8", "--omega-grid", "log:0.1:10:5", "-o",
            &path(dir.path(), name),
        ]);
    }
    for ext in ["csv", "csv.json"] {
        let a = std::fs::read(dir.path().join(format!("a.{ext}"))).unwrap();
        let b = std::fs::read(dir.path().join(format!("b.{ext}"))).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}

#[test]
fn echoed_config_reproduces_the_table() {
    let out = run_ok(&["sweep", "-d", "2", "-L", "6", "--delta", "-0.5", "--omega-grid", "0.1,1,10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let table = CsvTable::parse(&text).unwrap();
    let json = table
        .comments
        .iter()
        .find_map(|c| c.strip_prefix("config: "))
        .expect("config line");
    let config: RunConfig = serde_json::from_str(json).unwrap();
    assert_eq!(execute(&config).unwrap().render().unwrap(), text);
    assert_eq!(table.records.len(), 3);
    let meta = table.meta().unwrap();
    assert_eq!((meta.d, meta.l.as_str(), meta.delta), (2, "6", -0.5));
}

#[test]
fn invalid_configs_exit_with_code_two() {
    let cases: [&[&str]; 4] = [
        &["sweep", "-d", "2", "-L", "6", "--omega-grid", "0,1"],
        &["sweep", "--method", "ed", "-d", "1", "-L", "30", "--omega-grid", "1"],
        &["thermal", "-d", "1", "-L", "14", "--omega-grid", "1", "--t-grid", "1"],
        &["ramp", "-d", "2", "-L", "4", "--omega-i", "0.1", "--omega-f", "1", "--tau", "-1"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"], "config");
        assert!(!err["messages"].as_array().unwrap().is_empty());
    }
    assert_eq!(run(&["sweep", "--bogus"]).status.code(), Some(2));
}

#[test]
fn violations_are_reported_together() {
    let out = run(&["ramp", "-d", "4", "-L", "1", "--omega-i", "1", "--omega-f", "2", "--tau", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["messages"].as_array().unwrap().len() >= 3, "{err}");
}

#[test]
fn thermal_entropy_join_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let thermal = path(dir.path(), "thermal.csv");
    let entropy = path(dir.path(), "s.csv");
    let map = path(dir.path(), "map.csv");
    run_ok(&[
        "thermal", "-d", "1", "-L", "6", "--omega-grid", "0.5", "--t-grid", "log:0.02:20:120", "-o", &thermal,
    ]);
    run_ok(&["entropy", "--input", &thermal, "--omega", "0.5", "-o", &entropy]);
    run_ok(&["join", "--squeezing", &thermal, "--entropy", &entropy, "-o", &map]);

    let exact = CsvTable::read(Path::new(&thermal)).unwrap();
    let joined = CsvTable::read(Path::new(&map)).unwrap();
    let (s_exact, s_map) = (exact.column_f64("s").unwrap(), joined.column_f64("s").unwrap());
    assert_eq!(s_exact.len(), s_map.len());
    for (a, b) in s_exact.iter().zip(&s_map) {
        assert!((a - b).abs() < 5e-3);
    }
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{map}.json")).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), s_map.len());
}

#[test]
fn mismatched_metadata_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let t6 = path(dir.path(), "t6.csv");
    let t4 = path(dir.path(), "t4.csv");
    let s4 = path(dir.path(), "s4.csv");
    for (l, p) in [("6", &t6), ("4", &t4)] {
        run_ok(&["thermal", "-d", "1", "-L", l, "--omega-grid", "1", "--t-grid", "lin:0.1:2:20", "-o", p]);
    }
    run_ok(&["entropy", "--input", &t4, "-o", &s4]);
    let out = run(&["join", "--squeezing", &t6, "--entropy", &s4]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "input");
}

#[test]
fn json_format_on_stdout() {
    let out = run_ok(&["--format", "json", "sweep", "-d", "3", "-L", "4", "--omega-grid", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &v["rows"][0];
    assert_eq!(row["omega"], 1.0);
    assert!(row["xi2"].as_f64().unwrap() < 1.0);
}
