use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mgalpha"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "data",
        "graphs",
        name,
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn phases_ps_reports_seven_tenths() {
    let v = json(&run(&["phases", "--genus", "10", "--model", "ps"]));
    let walls: Vec<&str> = v["walls"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["alpha"].as_str().unwrap())
        .collect();
    assert_eq!(walls, ["7/10"]);
    assert_eq!(
        v["identically_zero"],
        serde_json::json!([{"family": "A", "params": []}])
    );
}

#[test]
fn phases_mg_single_wall() {
    let v = json(&run(&["phases", "--genus", "5", "--model", "mg"]));
    assert_eq!(v["walls"][0]["alpha"], "9/11");
    assert_eq!(v["walls"][0]["certified"], true);
}

#[test]
fn phases_tsv_has_header() {
    let out = run(&["phases", "--genus", "4", "--model", "ps", "--tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("family\tparams\tconstant\tslope\t0\t"));
}

#[test]
fn nef_check_in_the_band() {
    let v = json(&run(&[
        "nef-check",
        "--genus",
        "10",
        "--alpha",
        "4/5",
        "--model",
        "ps",
    ]));
    assert_eq!(v["verdict"], "nef");
    let below = json(&run(&[
        "nef-check",
        "--genus",
        "10",
        "--alpha",
        "69/100",
        "--model",
        "ps",
    ]));
    assert_eq!(below["verdict"], "not_nef");
}

#[test]
fn nef_check_from_class_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("class.json");
    std::fs::write(&path, r#"{"g":4,"lambda":"1","delta":["1","0","0"]}"#).unwrap();
    let v = json(&run(&["nef-check", "--class", path.to_str().unwrap()]));
    assert_eq!(v["verdict"], "not_nef");
    assert_eq!(v["witness"]["family"], "A");
    assert_eq!(v["value"], "-11");
}

#[test]
fn fcurves_table_tsv() {
    let out = run(&[
        "fcurves", "--genus", "3", "--alpha", "9/11", "--model", "mg", "--tsv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("family\tparams\tvalue"));
    assert!(text.contains("A\t\t0\n"));
    let list = json(&run(&["fcurves", "--genus", "4"]));
    assert_eq!(list.as_array().unwrap().last().unwrap()["family"], "F");
}

#[test]
fn graph_transform_worked_example() {
    let v = json(&run(&["graph", "transform", &data("elliptic_tail.json")]));
    assert_eq!(
        v,
        serde_json::json!({"vertices": [{"id": 1, "h": 4, "c": 1, "m": 0}], "edges": []})
    );
}

#[test]
fn graph_check_and_equiv() {
    let v = json(&run(&["graph", "check", &data("elliptic_tail.json")]));
    assert_eq!(v["stable"]["holds"], true);
    assert_eq!(v["pseudostable"]["holds"], false);
    let e = json(&run(&[
        "graph",
        "equiv",
        &data("elliptic_tail.json"),
        &data("nodal_rational_tail.json"),
    ]));
    assert_eq!(e["equivalent"], true);
    let tails = json(&run(&["graph", "tails", &data("two_tails.json")]));
    assert_eq!(tails.as_array().unwrap().len(), 2);
}

#[test]
fn vnprofile_json() {
    let v = json(&run(&["vnprofile", "--g", "5", "--r", "2", "--n", "2"]));
    assert_eq!(v["dims"], serde_json::json!([12, 10, 10]));
    assert_eq!(v["regime_ok"], serde_json::json!([true, true, true]));
}

#[test]
fn descent_commands() {
    let v = json(&run(&["descent", "coeff", "--e", "2", "--a", "3/5"]));
    assert_eq!(v["coarse"], "4/5");
    let s = json(&run(&[
        "descent", "sweep", "--m-max", "20", "--e-max", "5", "--q-max", "4",
    ]));
    assert_eq!(s["failures"], serde_json::json!([]));
    assert_eq!(s["cases"], 20 * 5 * 14);
}

#[test]
fn oracle_quick_run() {
    let v = json(&run(&[
        "oracle",
        "run",
        "--scope",
        "fcurves,floor",
        "--bounds",
        "quick",
    ]));
    assert_eq!(v["all_agree"], true);
    assert!(v["by_operation"]["enumerate_fcurves"].is_array());
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = run(&[
        "report",
        "--from",
        "10",
        "--to",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("9/11") && text.contains("7/10"));
}

#[test]
fn empty_report_range() {
    let out = run(&["report", "--from", "5", "--to", "4"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(run(&["phases", "--genus", "10"]).status.code(), Some(2));
    assert_eq!(
        run(&["nef-check", "--genus", "10", "--alpha", "0.8"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["phases", "--genus", "2", "--model", "mg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["oracle", "run", "--bounds", "graph_vertices=40"])
            .status
            .code(),
        Some(2)
    );
    let usage = run(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
    // domain errors
    assert_eq!(
        run(&["nef-check", "--genus", "10", "--alpha", "3/2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["vnprofile", "--g", "5", "--r", "6", "--n", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["graph", "transform", "/nonexistent.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["report", "--from", "2", "--to", "4"]).status.code(),
        Some(1)
    );
    // help is not an error
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["phases", "--genus", "12", "--model", "ps"]).stdout;
    let b = run(&["phases", "--genus", "12", "--model", "ps"]).stdout;
    assert_eq!(a, b);
}
