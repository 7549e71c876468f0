mod common;

use std::path::Path;
use std::process::Command;

use qgauss::analysis::{cmd_analyze, cmd_diffusion, cmd_fit, cmd_gof, AnalysisConfig, QMode};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qgauss"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn analyze_writes_bundle() {
    let out = tempfile::tempdir().unwrap();
    let mut cfg = AnalysisConfig::new(common::fixture_path(), out.path());
    cfg.delays = (1..=20).collect();
    cfg.branches = true;
    let r = cmd_analyze(&cfg).unwrap();
    for f in ["summary.json", "beta.csv", "gof.csv", "branches.csv", "pdf_compare_1.csv", "pdf_compare_20.csv"] {
        assert!(out.path().join(f).exists(), "{f}");
    }
    assert!(!out.path().join("pdf_compare_40.csv").exists());
    let json: serde_json::Value = serde_json::from_slice(&read(out.path(), "summary.json")).unwrap();
    assert_eq!(json["schema_version"], 1);
    for key in ["q_hat", "stderr_q", "tail_index"] {
        assert!(json[key].is_number(), "{key}");
    }
    for key in ["lambda", "b", "d", "tau"] {
        assert!(json["diffusion"][key].is_number(), "{key}");
    }
    let beta = String::from_utf8(read(out.path(), "beta.csv")).unwrap();
    assert!(beta.starts_with("delay,beta_hat,stderr,beta_fit_powerlaw,beta_sd,beta_dd\n"));
    assert_eq!(beta.lines().count(), 21);
    assert_eq!(r.gof.len(), 20);
}

#[test]
fn subcommands_agree_with_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = AnalysisConfig::new(common::fixture_path(), dir.path().join("a"));
    cfg.delays = (1..=10).collect();
    let full = cmd_analyze(&cfg).unwrap();
    cfg.out_dir = dir.path().join("b");
    let d = cmd_diffusion(&cfg).unwrap();
    assert_eq!(d.diffusion, full.summary.diffusion);
    assert_eq!(read(&dir.path().join("a"), "beta.csv"), read(&dir.path().join("b"), "beta.csv"));
    let g = cmd_gof(&cfg).unwrap();
    assert_eq!(g, full.gof);
    cfg.q_mode = QMode::Fixed(full.summary.q_hat);
    let f = cmd_fit(&cfg).unwrap();
    assert_eq!(f.fits.len(), 10);
    assert!((f.fits[0].beta / full.summary.beta1 - 1.0).abs() < 1e-9);
}

#[test]
fn binary_analyze_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let st = bin()
            .args(["analyze", "--delays", "1..15", "--seed", "7", "--branches", "--input"])
            .arg(common::fixture_path())
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(st.success());
        out
    };
    let (a, b) = (run("a"), run("b"));
    for f in ["summary.json", "beta.csv", "gof.csv", "branches.csv", "pdf_compare_1.csv", "pdf_compare_10.csv"] {
        assert_eq!(read(&a, f), read(&b, f), "{f}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    let fixture = common::fixture_path();
    let fx = fixture.to_str().unwrap();
    let out = dir.path().to_str().unwrap();
    // config: empty delay list, bad gamma
    assert_eq!(code(&["analyze", "--input", fx, "--delays", "", "--out", out]), Some(2));
    assert_eq!(code(&["fit", "--input", fx, "--gamma", "0.5", "--out", out]), Some(2));
    // data: missing input, region outside the series
    assert_eq!(code(&["fit", "--input", "/no/such.csv", "--out", out]), Some(3));
    assert_eq!(code(&["analyze", "--input", fx, "--region", "1950-01-01:1960-01-01", "--out", out]), Some(3));
    // numerical: 96% of returns are exactly zero, so no admissible q fits
    let flat = dir.path().join("flat.csv");
    let mut text = String::from("date,close\n");
    for i in 0..200 {
        let d = chrono::NaiveDate::from_ymd_opt(2000, 1, 1).unwrap() + chrono::Duration::days(i);
        text.push_str(&format!("{d},{}\n", if i % 50 == 25 { 2.0 } else { 1.0 }));
    }
    std::fs::write(&flat, text).unwrap();
    assert_eq!(code(&["fit", "--delays", "1", "--input", flat.to_str().unwrap(), "--out", out]), Some(4));
}

#[test]
fn sample_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let st = bin()
        .args(["sample", "--q", "fixed:1.5", "--beta", "20000", "--n", "300", "--seed", "1", "--walk", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(dir.path().join("walk.csv")).unwrap();
    let fixture = std::fs::read_to_string(common::fixture_path()).unwrap();
    // same generator and seed as the bundled fixture
    let head: Vec<&str> = fixture.lines().take(301).collect();
    assert_eq!(text.lines().collect::<Vec<_>>(), head);
    let st = bin().args(["sample", "--q", "estimate", "--out"]).arg(dir.path()).status().unwrap();
    assert_eq!(st.code(), Some(2));
}
