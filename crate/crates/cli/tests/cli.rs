use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const MANIFEST: &str = r#"
[presentations]
cyclic6 = "< a | a^6 = e >"

[[task]]
id = "t"
title = "a^2 is torsion"
presentation = "cyclic6"
question = { kind = "torsion", term = "a^2" }
groups = ["AxPL'"]
engine = "prover"
budget = { seconds = 30 }

[[task]]
id = "m"
title = "no small model"
presentation = "cyclic6"
question = { kind = "statements" }
statements = { kind = "inequalities", items = [["a^2", "e"]] }
groups = []
engine = "model"
budget = { min_size = 1, max_size = 2 }
"#;

fn ordo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordo")).args(args).output().expect("binary runs")
}

fn manifest(dir: &Path, text: &str) -> String {
    let path = dir.join("tasks.toml");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn torsion_task_exits_zero() {
    let dir = TempDir::new().unwrap();
    let m = manifest(dir.path(), MANIFEST);
    let o = ordo(&["run", &m, "--task", "t"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("torsion criterion"));
}

#[test]
fn exhausted_size_range_is_unknown() {
    let dir = TempDir::new().unwrap();
    let m = manifest(dir.path(), MANIFEST);
    let o = ordo(&["run", &m, "--task", "m"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn malformed_manifest_exits_three() {
    let dir = TempDir::new().unwrap();
    let m = manifest(dir.path(), "[[task]]\nid = 1\n");
    assert_eq!(ordo(&["run", &m]).status.code(), Some(3));
    assert_eq!(ordo(&["run", "/nonexistent/tasks.toml"]).status.code(), Some(3));
}

#[test]
fn unknown_task_id_exits_three() {
    let dir = TempDir::new().unwrap();
    let m = manifest(dir.path(), MANIFEST);
    assert_eq!(ordo(&["run", &m, "--task", "zz"]).status.code(), Some(3));
}

#[test]
fn proof_written_by_prove_is_accepted_by_verify() {
    let dir = TempDir::new().unwrap();
    let m = manifest(dir.path(), MANIFEST);
    let out = dir.path().join("out");
    let o = ordo(&["prove", &m, "--task", "t", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let proof = out.join("task_t.proof");
    let o = ordo(&["verify", &m, "--task", "t", "--proof", proof.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("accepted"));
}

#[test]
fn compile_writes_three_input_formats() {
    let dir = TempDir::new().unwrap();
    let m = manifest(dir.path(), MANIFEST);
    let out = dir.path().join("out");
    let o = ordo(&["compile", &m, "--task", "t", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for ext in ["p9.in", "m4.in", "p"] {
        assert!(out.join(format!("task_t.{ext}")).exists(), "{ext}");
    }
    let p9 = fs::read_to_string(out.join("task_t.p9.in")).unwrap();
    assert!(p9.contains("formulas(assumptions)."));
}

#[test]
fn catalog_prefix_runs_klein_bottle_tasks() {
    let dir = TempDir::new().unwrap();
    let o = ordo(&["catalog", "1.*", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("task 1.1"));
    assert!(text.contains("NotBiOrderable"));
    assert!(dir.path().join("index.json").exists());
}

#[test]
fn catalog_list_names_every_task() {
    let o = ordo(&["catalog", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 46);
}
