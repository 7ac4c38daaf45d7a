use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const SURFACE: &str = "ring x, y, z, w\nx*y + x*w - y*w\nx*z - w^2\ny*z - y*w - w^2\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn nndtoric(args: &[&str], file: &Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nndtoric"))
        .args(args)
        .arg(file)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str], file: &Path) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, stdout, _) = nndtoric(&a, file);
    (code, serde_json::from_str(&stdout).unwrap())
}

#[test]
fn check_surface_is_nondegenerate() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "surface.txt", SURFACE);
    let (code, v) = json(&["check"], &f);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "check");
    assert_eq!(v["verdict"], true);
    assert_eq!(v["report"]["nondegeneracy"]["nondegenerate"], true);
}

#[test]
fn check_double_line_reports_diagonal_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "double.txt", "ring x, y\nx^2 + 2*x*y + y^2\n");
    let (code, v) = json(&["check"], &f);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], false);
    let w = &v["report"]["nondegeneracy"]["witness"];
    assert_eq!(w[0], w[1]);
    assert_ne!(w[0], 0);
}

#[test]
fn fan_of_a_line_is_the_dual_fan() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "line.txt", "ring x, y\nx + y\n");
    let (code, v) = json(&["fan"], &f);
    assert_eq!(code, 0);
    let cells = v["report"]["groebner_fan"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    let rays: Vec<String> = cells.iter().map(|c| c["rays"].to_string()).collect();
    assert!(rays.iter().all(|r| r.contains("[1,1]")));
    assert_eq!(
        v["report"]["spot_checks"]["agreed"],
        v["report"]["spot_checks"]["samples"]
    );
}

#[test]
fn resolve_cusp() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cusp.txt", "ring x, y\nx^2 - y^3\n");
    let (code, v) = json(&["resolve"], &f);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["resolution"]["resolved"], true);
    let (code, stdout, _) = nndtoric(&["resolve"], &f);
    assert_eq!(code, 0);
    assert!(stdout.contains("resolved: true"));
}

#[test]
fn refine_and_tropical_succeed() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "surface.txt", SURFACE);
    let (code, v) = json(&["refine"], &f);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["regular"], true);
    let (code, v) = json(&["tropical"], &f);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["tropical"]["dim"], 2);
    assert_eq!(v["report"]["dimension"], 2);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "ring x, y\nx + q\n");
    let (code, v) = json(&["check"], &f);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["line"], 2);
    assert_eq!(v["error"]["column"], 5);
    let (code, stdout, stderr) = nndtoric(&["check"], &f);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("line 2"));
}

#[test]
fn missing_file_and_unmet_hypotheses() {
    let dir = TempDir::new().unwrap();
    let (code, v) = json(&["fan"], &dir.path().join("absent.txt"));
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "io");
    let f = write(&dir, "unit.txt", "ring x, y\nx + 1\n");
    let (code, v) = json(&["resolve"], &f);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "domain");
}

#[test]
fn budgets_are_enforced() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "surface.txt", SURFACE);
    let (code, v) = json(&["fan", "--budget-cones", "2"], &f);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "resource");
    let g = write(
        &dir,
        "opt.txt",
        &format!("option budget-cones = 2\n{SURFACE}"),
    );
    assert_eq!(json(&["fan"], &g).0, 2);
    assert_eq!(json(&["fan", "--budget-cones", "100"], &g).0, 0);
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "surface.txt", SURFACE);
    let a = nndtoric(&["resolve", "--format", "json", "--seed", "7"], &f).1;
    let b = nndtoric(&["resolve", "--format", "json", "--seed", "7"], &f).1;
    assert_eq!(a, b);
    let out = dir.path().join("report.json");
    let (code, stdout, _) = nndtoric(
        &[
            "resolve",
            "--format",
            "json",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ],
        &f,
    );
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), a);
}

#[test]
fn ideal_files_round_trip() {
    let f = nndtoric_cli::parse_ideal_text(SURFACE).unwrap();
    assert_eq!(nndtoric_cli::parse_ideal_text(&f.to_text()).unwrap(), f);
}
