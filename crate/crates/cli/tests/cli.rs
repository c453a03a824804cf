//! End-to-end checks of the `latcover` binary.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_latcover"))
}

fn tmp(name: &str) -> PathBuf {
    let mut dir = std::env::temp_dir();
    dir.push(format!("latcover-test-{}-{name}", std::process::id()));
    dir
}

#[test]
fn glued_cover_reports_rho_four() {
    let file = tmp("glued.poset");
    let status = bin()
        .args(["gen", "glued", "--n", "3", "--m", "3", "-o"])
        .arg(&file)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(file.with_extension("poset.json").exists());

    let out = bin()
        .args(["cover", "--input"])
        .arg(&file)
        .args(["--levels", "2", "3", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rho"], 4);
    assert_eq!(doc["optimal"], true);
    assert_eq!(doc["span_size"], 6);
    assert_eq!(doc["intervals"].as_array().unwrap().len(), 4);
}

#[test]
fn scd_prints_ten_chains_for_n5() {
    let out = bin()
        .args(["scd", "--n", "5", "--verify"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("10 chains"), "{text}");
    assert!(text.contains("verified"), "{text}");
    let chain_lines = text
        .lines()
        .filter(|l| !l.is_empty() && l.chars().all(|c| matches!(c, '0' | '1' | ',')))
        .count();
    assert_eq!(chain_lines, 10);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_is_usage_error() {
    let out = bin()
        .args([
            "cover",
            "--input",
            "/nonexistent.poset",
            "--levels",
            "0",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surjection_subcommand_verifies() {
    let file = tmp("vee.poset");
    std::fs::write(&file, "3\n0 1\n0 2\n").unwrap();
    let out = bin()
        .args(["surjection", "--input"])
        .arg(&file)
        .args(["--lower", "0", "--upper", "1,2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verified"], true);
}

#[test]
fn search_small_corpus_is_clean() {
    let out = bin()
        .args([
            "search",
            "--max-n",
            "3",
            "--problem",
            "bound",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn conjecture_exhaustive_n3_is_clean() {
    let out = bin()
        .args([
            "conjecture",
            "--n",
            "3",
            "--mode",
            "exhaustive",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_reports_distributive_lattice() {
    let file = tmp("b3.poset");
    let status = bin()
        .args(["gen", "boolean", "--n", "3", "-o"])
        .arg(&file)
        .status()
        .unwrap();
    assert!(status.success());
    let out = bin()
        .args(["verify", "--input"])
        .arg(&file)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["lattice"], true);
    assert_eq!(doc["distributive"], true);
    assert_eq!(doc["width"], 3);
}

#[test]
fn ideals_subcommand_emits_bold_bar_sidecar() {
    let input = tmp("fence.poset");
    std::fs::write(&input, "4\n0 2\n1 2\n1 3\n").unwrap();
    let output = tmp("fence-ideals.poset");
    let status = bin()
        .args(["gen", "ideals", "--input"])
        .arg(&input)
        .arg("-o")
        .arg(&output)
        .status()
        .unwrap();
    assert!(status.success());
    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(output.with_extension("poset.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(sidecar["bold"].as_array().unwrap().len(), 4);
    assert_eq!(sidecar["bar"].as_array().unwrap().len(), 4);
    assert_eq!(sidecar["bottom"], 0);
}
