//! End-to-end tests against the built binary.

use std::path::Path;
use std::process::{Command, Output};

use starshare_cli::table::OutputTable;

fn starshare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starshare"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn threshold_prints_value() {
    let out = starshare(&["threshold", "--k", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("C(3) = 0.96824583655185"), "{text}");
}

#[test]
fn max_rounds_from_concurrence() {
    let out = starshare(&["max-rounds", "--concurrence", "0.99"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn svg_needs_sweep_and_out() {
    let out = starshare(&["threshold", "--k", "2", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(2));
    let out = starshare(&["sweep", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explicit_format_needs_out() {
    let out = starshare(&["threshold", "--k", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = starshare(&["threshold", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_parameter_is_a_runtime_error() {
    let out = starshare(&["svalue", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

fn sweep_args(path: &Path, format: &str) -> Vec<String> {
    [
        "sweep",
        "--axis1",
        "theta:0.4:pi/4:7",
        "--axis2",
        "p:0:0.1:5",
        "--noise",
        "depolarizing",
        "--format",
        format,
        "--out",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([path.display().to_string()])
    .collect()
}

#[test]
fn sweep_csv_structure_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = Command::new(env!("CARGO_BIN_EXE_starshare"))
            .args(sweep_args(path, "csv"))
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap(), "not deterministic");

    let meta_lines = text.lines().take_while(|l| l.starts_with("# ")).count();
    assert!(meta_lines >= 8, "expected metadata lines, got {meta_lines}");
    assert!(text.contains("# command=sweep"));
    let header = text.lines().nth(meta_lines).unwrap();
    assert_eq!(header, "theta,p,max_rounds,S_1,S_2,S_3,S_4,S_5,note");
    let rows = text.lines().skip(meta_lines + 1).count();
    assert_eq!(rows, 7 * 5);
}

#[test]
fn sweep_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = Command::new(env!("CARGO_BIN_EXE_starshare"))
        .args(sweep_args(&path, "json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let table = OutputTable::from_json(&text).unwrap();
    assert_eq!(table.columns[..3], ["theta", "p", "max_rounds"]);
    assert_eq!(table.rows.len(), 7 * 5);
    // serializing again reproduces the file byte-for-byte
    assert_eq!(table.to_json(), text);
}

#[test]
fn sweep_svg_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.svg");
    let out = Command::new(env!("CARGO_BIN_EXE_starshare"))
        .args(sweep_args(&path, "svg"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("class=\"cell\"").count(), 7 * 5);
}

#[test]
fn both_conventions_tags_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("both.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_starshare"))
        .args([
            "sweep",
            "--axis1",
            "theta:0.4:pi/4:4",
            "--axis2",
            "epsilon:1e-10:1e-8:3",
            "--both-conventions",
            "--format",
            "csv",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# convention=pi2+pi4"));
    assert!(text.lines().any(|l| l.starts_with("theta,") && l.ends_with(",convention")));
    let pi2 = text.lines().filter(|l| l.ends_with(",pi2")).count();
    let pi4 = text.lines().filter(|l| l.ends_with(",pi4")).count();
    assert_eq!((pi2, pi4), (12, 12));

    // incompatible with a delta axis and with svg output
    let out = starshare(&[
        "sweep",
        "--axis1",
        "theta:0.4:pi/4:4",
        "--axis2",
        "delta:0.1:1.0:3",
        "--both-conventions",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_reports_each_round() {
    let out = starshare(&["compare"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for j in 1..=5 {
        assert!(text.contains(&format!("round {j}:")), "{text}");
    }
}

#[test]
fn verify_small_sample_passes() {
    let out = starshare(&["verify", "--samples", "20", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).matches("pass").count(), 3);
}

#[test]
fn tradeoff_names_boundary_cells() {
    let out = starshare(&["tradeoff", "--n", "3", "--k", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("boundary cells:"));
    assert!(text.contains("(n=3, k=2, m=3, j=1)"), "{text}");
    assert!(text.contains("(n=3, k=2, m=2, j=2)"), "{text}");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{ "k": 3 }"#).unwrap();
    let cfg = cfg.display().to_string();

    let out = starshare(&["threshold", "--config", &cfg]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("C(3)"));

    let out = starshare(&["threshold", "--config", &cfg, "--k", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("C(2) = 0.86602540378443"));
}
