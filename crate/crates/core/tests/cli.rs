use std::path::Path;
use std::process::{Command, Output};

fn figsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_figsynth")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("corpus.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL: &str = "master_seed = 4\n[counts]\ntrain = 10\nval1 = 0\nval2 = 5\ntest1 = 0\ntest2 = 0\n";

#[test]
fn generate_validate_stats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out_dir = dir.path().join("out");
    let out = out_dir.to_str().unwrap();

    let gen = figsynth(&["generate", "--config", &cfg, "--out", out, "--workers", "2"]);
    assert_eq!(code(&gen), 0, "{}", String::from_utf8_lossy(&gen.stderr));
    assert!(out_dir.join("manifest.json").is_file());

    let val = figsynth(&["validate", out, "--full-pixel-scan", "--json"]);
    assert_eq!(code(&val), 0, "{}", String::from_utf8_lossy(&val.stdout));
    let report: serde_json::Value = serde_json::from_slice(&val.stdout).unwrap();
    assert_eq!(report["oracle_mismatches"], 0);
    assert_eq!(report["figures_pixel_checked"], 15);

    let stats = figsynth(&["stats", out, "--json"]);
    assert_eq!(code(&stats), 0);
    let stats: serde_json::Value = serde_json::from_slice(&stats.stdout).unwrap();
    assert_eq!(stats["splits"][0]["figures"], 10);
    assert_eq!(code(&figsynth(&["stats", out])), 0);
}

#[test]
fn seed_override_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(code(&figsynth(&["generate", "--config", &cfg, "--out", a.to_str().unwrap()])), 0);
    assert_eq!(
        code(&figsynth(&["generate", "--config", &cfg, "--out", b.to_str().unwrap(), "--seed", "99"])),
        0
    );
    let qa = |root: &Path| std::fs::read(root.join("train/qa_pairs.json")).unwrap();
    assert_ne!(qa(&a), qa(&b));
}

#[test]
fn violations_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out_dir = dir.path().join("out");
    let out = out_dir.to_str().unwrap();
    assert_eq!(code(&figsynth(&["generate", "--config", &cfg, "--out", out])), 0);
    let qa_path = out_dir.join("train/qa_pairs.json");
    let text = std::fs::read_to_string(&qa_path).unwrap();
    let flipped = if let Some(i) = text.find("\"answer\": \"yes\"") {
        format!("{}\"answer\": \"no\"{}", &text[..i], &text[i + "\"answer\": \"yes\"".len()..])
    } else {
        panic!("no yes answer found")
    };
    std::fs::write(&qa_path, flipped).unwrap();
    let val = figsynth(&["validate", out]);
    assert_eq!(code(&val), 1);
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(code(&figsynth(&[])), 2);
    assert_eq!(code(&figsynth(&["generate"])), 2);
    assert_eq!(code(&figsynth(&["frobnicate"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "unknown_field = true\n");
    assert_eq!(code(&figsynth(&["generate", "--config", &bad])), 2);
    let tiny = write_config(dir.path(), "base_height = 16\n");
    assert_eq!(code(&figsynth(&["generate", "--config", &tiny])), 2);
}

#[test]
fn io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.toml");
    assert_eq!(code(&figsynth(&["generate", "--config", missing.to_str().unwrap()])), 3);
    assert_eq!(code(&figsynth(&["validate", dir.path().to_str().unwrap()])), 3);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&figsynth(&["--help"])), 0);
    let v = figsynth(&["--version"]);
    assert_eq!(code(&v), 0);
    assert!(String::from_utf8_lossy(&v.stdout).contains("figsynth"));
}
