use std::path::{Path, PathBuf};
use std::process::{Command as Process, Output};

use graftkl::cli::{parse_graft, run_command, Command, GraftDocument, Options};

fn corpus() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

fn graftkl(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_graftkl")).args(args).output().unwrap()
}

fn corpus_file(name: &str) -> String {
    corpus().into_iter().find(|p| p.to_str().unwrap().contains(name)).unwrap().to_str().unwrap().to_string()
}

#[test]
fn corpus_files_are_serialization_fixed_points() {
    let files = corpus();
    assert_eq!(files.len(), 20);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = GraftDocument::parse(&text).unwrap();
        assert_eq!(doc.serialize(), text, "{}", path.display());
        let graft = doc.to_graft().unwrap();
        assert_eq!(parse_graft(&GraftDocument::from_graft(&graft).serialize()).unwrap(), graft);
    }
}

#[test]
fn every_command_runs_on_every_corpus_file() {
    for path in corpus() {
        let graft = parse_graft(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let root = graft.graph().names().first().cloned();
        for c in Command::ALL {
            if c == Command::Sebo && root.is_none() {
                continue;
            }
            let opts = Options { root: root.clone(), draw: true, ..Default::default() };
            let out = run_command(c, Some(&graft), &opts).unwrap_or_else(|e| panic!("{} {}: {e}", c.name(), path.display()));
            assert!(out.ok, "{} failed on {}", c.name(), path.display());
            assert_eq!(out.output["command"], c.name());
        }
    }
}

#[test]
fn exit_codes() {
    let square = corpus_file("03-square");
    assert_eq!(graftkl(&["nu", &square]).status.code(), Some(0));
    assert_eq!(graftkl(&["frobnicate", &square]).status.code(), Some(1));
    assert_eq!(graftkl(&["sebo", &square]).status.code(), Some(1));
    assert_eq!(graftkl(&["nu", "/nonexistent.graft"]).status.code(), Some(1));
    assert_eq!(graftkl(&["nu", &square, "--wat"]).status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("graftkl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("odd.graft");
    std::fs::write(&bad, "v a t\nv b\n").unwrap();
    let out = graftkl(&["kl", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a graft"));
}

#[test]
fn outputs_and_drawings() {
    let square = corpus_file("03-square");
    let out = graftkl(&["kl", &square]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["format"], "graftkl/1");
    assert_eq!(value["result"]["classes"], serde_json::json!([["1", "3"], ["2", "4"]]));

    let path = corpus_file("02-path");
    let out = graftkl(&["dist", &path, "--from", "a", "--to", "c"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["result"]["dist"], -2);

    let dir = std::env::temp_dir().join(format!("graftkl-draw-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("square.dot");
    assert!(graftkl(&["kl", &square, "--draw", dot.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("subgraph cluster_").count(), 2);

    let join = dir.join("join.txt");
    std::fs::write(&join, "1 2\n3 4\n").unwrap();
    let out = graftkl(&["sebo", &square, "--root", "1", "--join", join.to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["result"]["level0"], serde_json::json!(["1", "3"]));
    assert!(value["result"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    std::fs::write(&join, "1 2\n2 3\n3 4\n4 1\n").unwrap();
    assert_eq!(graftkl(&["sebo", &square, "--root", "1", "--join", join.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verification_is_reproducible() {
    let a = graftkl(&["verify", "--max-n", "3", "--count", "30", "--seed", "5"]);
    let b = graftkl(&["verify", "--max-n", "3", "--count", "30", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = graftkl(&["verify", "--max-n", "3", "--count", "30", "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout);
    let petersen = corpus_file("12-petersen");
    assert!(graftkl(&["verify", &petersen]).status.success());
}
