use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamina")).args(args).output().expect("binary runs")
}

fn run_data(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = data(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn dim_of_one_pants() {
    let out = run_data("dim", "one_pants.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!((v["n_free"].clone(), v["n_plus"].clone()), (json!(0), json!(3)));
}

#[test]
fn extend_an_arc() {
    let out = run_data("extend", "arc_attachments.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"x0": "1", "weights": ["1", "3", "0"]}));
}

#[test]
fn extend_a_circle_reports_the_total() {
    let out = run_data("extend", "closed_attachments.json", &[]);
    let v = stdout_json(&out);
    assert_eq!(v["algebraic_total"], json!("1"));
    assert_eq!(v["x0"], json!("0"));
}

#[test]
fn connector_next_to_empty_trim_annulus_is_rejected() {
    let out = run_data("validate", "connector_to_tempty.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["ok"], json!(false));
    assert!(v["violations"].as_array().unwrap().iter().any(|s| s.as_str().unwrap().contains("empty trim annulus")));
    let err: Value = serde_json::from_slice(&out.stderr).expect("json on stderr");
    assert_eq!(err["error"], json!("invariant_violation"));
}

#[test]
fn chi_of_a_monogon_and_a_decomposition() {
    let v = stdout_json(&run_data("chi", "monogon.json", &[]));
    assert_eq!(v["chi_g"], json!("1/2"));
    let v = stdout_json(&run_data("chi", "two_pants.json", &[]));
    assert_eq!((v["chi"].clone(), v["chi_g"].clone()), (json!(-2), json!("-2")));
}

#[test]
fn gluing_mismatch_exits_with_one() {
    let out = run_data("coords-check", "bad_gluing_coords.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], json!("gluing_mismatch"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("lamina-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"pieces\": [{\"id\": \"x\", \"kind\": \"Z\"}]}").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["dim", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["extend", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn intersect_formula_and_oracle_agree() {
    let a = stdout_json(&run_data("intersect", "trim_pants_coords.json", &[]));
    let b = stdout_json(&run_data("intersect", "trim_pants_coords.json", &["--oracle"]));
    assert_eq!(a["vector"], b["vector"]);
    assert_eq!(a["vector"]["delta:d1:-"], json!("2"));
    assert_eq!(a["vector"]["C:q1"], json!("3"));
}

#[test]
fn intersect_table_lists_one_row_per_class() {
    let out = run_data("intersect", "two_pants_coords.json", &["--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows.contains(&"C:q1\t2"), "{text}");
    assert_eq!(rows.len(), 7);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (cmd, file, extra) in [
        ("intersect", "trim_pants_coords.json", vec![]),
        ("svg", "trim_pants_coords.json", vec!["--piece", "t1"]),
        ("dim", "two_pants.json", vec![]),
    ] {
        let a = run_data(cmd, file, &extra);
        let b = run_data(cmd, file, &extra);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn svg_of_an_unknown_piece_is_malformed() {
    let out = run_data("svg", "two_pants_coords.json", &["--piece", "zz"]);
    assert_eq!(out.status.code(), Some(2));
}
