use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use pwa_bounds::files::{FunctionFile, SetFile};
use pwa_bounds::report::verify_report;
use pwa_bounds_core::pwa::{fixtures, MinMaxFunction};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pwa-bounds"));
    cmd.env_remove("PWA_SEED");
    cmd
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn function_file(name: &str, f: &MinMaxFunction) -> PathBuf {
    write(name, &serde_json::to_string_pretty(&FunctionFile::from_function(f)).unwrap())
}

fn run(args: &[&str], paths: &[&PathBuf]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    for p in paths {
        cmd.arg(p);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    })
}

#[test]
fn analyze_reports_piece_minima() {
    let f = function_file("robinson_4_2.json", &fixtures::robinson_4_2());
    let out = run(&["--format", "json", "analyze"], &[&f]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["analysis"]["f_star"], serde_json::json!(["1", "0"]));
    assert_eq!(report["analysis"]["rho"], "1");
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn analyze_final_pair_lists_both_cones() {
    let f = function_file("final_pair_analyze.json", &fixtures::final_4_3_pair());
    let out = run(&["--format", "json", "analyze"], &[&f]);
    let cones = json(&out)["analysis"]["rec_plus_sublevel"].as_array().unwrap().len();
    assert_eq!(cones, 2);
}

#[test]
fn analyze_empty_sublevel_exits_zero() {
    let f = write("positive.json", r#"{"dim": 1, "pieces": [{"terms": [{"a": "1", "v": ["0"]}]}]}"#);
    let out = run(&["analyze"], &[&f]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("sublevel set empty"));
}

#[test]
fn fails_exit_code_and_witness_reverification() {
    let f = function_file("final_pair.json", &fixtures::final_4_3_pair());
    let full = write("full.json", r#"{"kind": "full"}"#);
    let out = run(&["--format", "json", "certify", "--theorem", "polyhedral"], &[&f, &full]);
    assert_eq!(out.status.code(), Some(0));
    let strict = run(&["--format", "json", "certify", "--fail-on-no"], &[&f, &full]);
    assert_eq!(strict.status.code(), Some(1));

    let report = json(&strict);
    let check = verify_report(&report).unwrap();
    assert!(check.failing_certificates >= 1);
    assert!(check.all_valid);
    let text = serde_json::to_string(&report).unwrap();
    let reparsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(verify_report(&reparsed).unwrap(), check);
}

#[test]
fn holds_on_left_half_plane() {
    let f = function_file("final_pair_left.json", &fixtures::final_4_3_pair());
    let v = write("left.json", r#"{"kind": "polyunion", "pieces": [{"A": [["1", "0"]], "b": ["10"]}]}"#);
    let out = run(&["--format", "json", "certify", "--fail-on-no"], &[&f, &v]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["certificates"][0]["verdict"], "holds");
}

#[test]
fn strict_sublevel_holds() {
    let f = function_file("robinson_strict.json", &fixtures::robinson_4_2());
    let v = write("strict.json", r#"{"kind": "strict_sublevel", "rho": "1"}"#);
    let out = run(&["--format", "json", "certify"], &[&f, &v]);
    let report = json(&out);
    assert_eq!(report["certificates"][0]["verdict"], "holds");
    assert_eq!(report["certificates"][0]["scope"]["rho"], "1");
}

#[test]
fn input_errors_exit_two() {
    let f = function_file("robinson_err.json", &fixtures::robinson_4_2());
    let bad = write("float.json", r#"{"dim": 1, "pieces": [{"terms": [{"a": 0.5, "v": [1]}]}]}"#);
    let out = run(&["analyze"], &[&bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let boxed = write("unit_box.json", r#"{"kind": "box", "lo": [0], "hi": [1]}"#);
    let out = run(&["certify", "--theorem", "robinson"], &[&f, &boxed]);
    assert_eq!(out.status.code(), Some(2));

    let wrong_dim = write("plane.json", r#"{"kind": "full", "dim": 2}"#);
    assert_eq!(run(&["certify"], &[&f, &wrong_dim]).status.code(), Some(2));

    let missing = PathBuf::from("/nonexistent/f.json");
    assert_eq!(run(&["analyze"], &[&missing]).status.code(), Some(2));

    let out = bin().env("PWA_SEED", "seven").arg("examples").arg("list").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_tau_quarter_grid() {
    let f = function_file("robinson_4_3.json", &fixtures::robinson_4_3());
    let full = write("line.json", r#"{"kind": "full"}"#);
    let out = run(
        &["--format", "json", "--box", "100", "estimate-tau", "--grid-step", "1/4"],
        &[&f, &full],
    );
    assert_eq!(out.status.code(), Some(0));
    let cert = &json(&out)["certificates"][0];
    assert_eq!(cert["derived"]["min_ratio"], "1/2");
    assert_eq!(cert["witnesses"][0]["point"], serde_json::json!(["2"]));
}

#[test]
fn estimate_tau_points_vanish() {
    let f = function_file("example_4_12.json", &fixtures::example_4_12());
    let points: Vec<String> = (1..=20).map(|n: i64| format!("[{n}, {}]", n * n)).collect();
    let v = write("points.json", &format!(r#"{{"kind": "points", "points": [{}]}}"#, points.join(", ")));
    let out = run(&["--format", "json", "estimate-tau"], &[&f, &v]);
    let cert = &json(&out)["certificates"][0];
    assert_eq!(cert["derived"]["vanishing"], true);
    assert_eq!(cert["derived"]["min_ratio"], "21/400");
}

#[test]
fn reports_are_reproducible() {
    let f = function_file("repro.json", &fixtures::final_4_3_pair());
    let full = write("repro_full.json", r#"{"kind": "full"}"#);
    let args = ["--format", "json", "--samples", "64", "--seed", "9", "estimate-tau", "--max-grid", "256"];
    let a = run(&args, &[&f, &full]);
    let b = run(&args, &[&f, &full]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let env = bin()
        .env("PWA_SEED", "9")
        .args(["--format", "json", "--samples", "64", "--seed", "1", "estimate-tau", "--max-grid", "256"])
        .arg(&f)
        .arg(&full)
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn files_round_trip_through_serialization() {
    let f = fixtures::example_4_12();
    let text = serde_json::to_string(&FunctionFile::from_function(&f)).unwrap();
    let back: FunctionFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_function().unwrap(), f);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);

    let set: SetFile = serde_json::from_str(r#"{"kind": "cone", "A": [["-1", "1"], [-1, -1]]}"#).unwrap();
    let spec = set.to_set(&f).unwrap();
    let again: SetFile = serde_json::from_str(&serde_json::to_string(&SetFile::from_set(&spec).unwrap()).unwrap()).unwrap();
    assert_eq!(again.to_set(&f).unwrap(), spec);
}

#[test]
fn examples_list_has_nine_fixtures() {
    let out = bin().args(["--format", "json", "examples", "list"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["summary"].as_array().unwrap().len(), 9);
}

#[test]
fn examples_run_each_fixture() {
    for name in ["robinson_4_2", "flat_pieces_4_10", "final_4_3_pair", "system_interval"] {
        let out = bin().args(["--format", "json", "examples", "run", name]).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{name}");
        let report = json(&out);
        assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
        assert!(verify_report(&report).unwrap().all_valid);
    }
    let out = bin().args(["examples", "run", "no_such_fixture"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
