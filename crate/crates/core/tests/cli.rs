//! The `restivo` binary: exit codes, artifacts and the cache.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn restivo(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_restivo"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verified_theorem_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = restivo(dir.path(), &["theorem", "look-states"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&dir.path().join("theorem-look-states.json"));
    assert_eq!(report["verified"], true);
    assert!(dir.path().join("LOOK.aut").exists());
}

#[test]
fn failed_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = restivo(dir.path(), &["theorem", "squares"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&dir.path().join("theorem-squares.json"))["verified"], false);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&restivo(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&restivo(dir.path(), &["theorem", "nope"])), 2);
    assert_eq!(code(&restivo(dir.path(), &["oracle", "nope"])), 2);
    assert_eq!(code(&restivo(dir.path(), &["build", "nothing-by-this-name"])), 2);
    assert_eq!(code(&restivo(dir.path(), &["enumerate", "--max", "zero"])), 2);
}

#[test]
fn heavy_jobs_need_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let o = restivo(dir.path(), &["build", "lexleast"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("lexleast"));
    assert!(!dir.path().join("lexleast.aut").exists());
}

#[test]
fn enumerate_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = restivo(dir.path(), &["enumerate", "--max", "16"]);
    assert_eq!(code(&o), 0);
    let tsv = fs::read_to_string(dir.path().join("table.tsv")).unwrap();
    let mut lines = tsv.lines();
    assert_eq!(lines.next(), Some("n\tE(n)"));
    let values: Vec<u64> = lines.map(|l| l.split('\t').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values, restivo::applications::TABLE_ONE);
    let linrep = fs::read_to_string(dir.path().join("minmat.linrep")).unwrap();
    let lr = restivo::enumeration::LinearRepresentation::parse(&linrep).unwrap();
    assert_eq!(lr.evaluate(16).unwrap(), 64.into());
}

#[test]
fn builds_are_deterministic_and_cached() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(code(&restivo(a.path(), &["build", "ovlfg"])), 0);
    assert_eq!(code(&restivo(b.path(), &["build", "ovlfg"])), 0);
    for file in ["ovlfg.aut", "ovlfg.dot"] {
        assert_eq!(fs::read(a.path().join(file)).unwrap(), fs::read(b.path().join(file)).unwrap(), "{file}");
    }
    assert_eq!(json(&a.path().join("build-ovlfg.json"))["cache"], "stored");
    assert_eq!(code(&restivo(a.path(), &["build", "ovlfg"])), 0);
    assert_eq!(json(&a.path().join("build-ovlfg.json"))["cache"], "hit");
    assert_eq!(code(&restivo(a.path(), &["--no-cache", "build", "ovlfg"])), 0);
    let report = json(&a.path().join("build-ovlfg.json"));
    assert_eq!(report["cache"], "verified");
    assert_eq!(report["states"], 14);
}

#[test]
fn export_dot_and_scripts() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&restivo(dir.path(), &["export-dot", "ovlfg"])), 0);
    let dot = fs::read_to_string(dir.path().join("ovlfg.dot")).unwrap();
    assert!(dot.starts_with("digraph"));

    let script = dir.path().join("mine.txt");
    fs::write(&script, "def odd \"?lsd_2 Ey x = 2*y + 1\":\neval some \"?lsd_2 Ex $odd(x)\":\n").unwrap();
    let o = restivo(dir.path(), &["script", script.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("odd.aut").exists());

    fs::write(&script, "def broken \"$nothere(x)\":\n").unwrap();
    let o = restivo(dir.path(), &["script", script.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nothere"));
}

#[test]
fn word_oracles() {
    let dir = tempfile::tempdir().unwrap();
    for check in restivo::cli::ORACLES {
        let o = restivo(dir.path(), &["oracle", check, "--max", "3"]);
        assert_eq!(code(&o), 0, "{check}");
    }
}
