use std::path::{Path, PathBuf};
use std::process::Command;

use bbcrystal_cli::doc::{CountDoc, GraphDoc};

const BIN: &str = env!("CARGO_BIN_EXE_bbcrystal");

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn rank1(dir: &Path, a: i64, height: u32, lambda: Option<i64>) -> PathBuf {
    let lam = lambda.map_or(String::new(), |n| format!(r#","lambda":{{"i":{n}}}"#));
    write_config(
        dir,
        &format!("rank1_{a}_{height}.json"),
        &format!(
            r#"{{"indices":["i"],"cartan":[[{a}]],"symmetrizers":[1],"height":{height}{lam}}}"#
        ),
    )
}

const A2: &str = r#"{"indices":["1","2"],"cartan":[[2,-1],[-1,2]],"symmetrizers":[1,1],"height":4,
  "lambda":{"1":1},"mu":{"2":1}}"#;

#[test]
fn figure_one_as_dot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = rank1(dir.path(), 2, 3, None);
    let (code, out, _) = run(&[
        "graph",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        "binfty",
        "--format",
        "dot",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph crystal {"));
    let nodes = out
        .lines()
        .filter(|l| l.trim_end().ends_with(';') && !l.contains("->"))
        .count();
    let edges: Vec<&str> = out.lines().filter(|l| l.contains("->")).collect();
    assert_eq!((nodes, edges.len()), (4, 3));
    assert!(edges.iter().all(|e| e.contains("label=\"(i,1)\"")));
}

#[test]
fn isotropic_elementary_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = rank1(dir.path(), 0, 3, None);
    let (code, out, _) = run(&[
        "graph",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        "elementary:i",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let g: GraphDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(g.nodes.len(), 7);
    assert_eq!(g.nodes[0].repr, "(0)");
}

#[test]
fn json_round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "a2.json", A2);
    let args = [
        "graph",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        "blambda",
        "--format",
        "json",
    ];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let g: GraphDoc = serde_json::from_str(&first).unwrap();
    assert_eq!(g.nodes.len(), 3);
    assert_eq!(g.to_json(), first);
    let out = dir.path().join("g.json");
    let (code, stdout, _) = run(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert_eq!((code, stdout.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(out).unwrap(), first);
}

#[test]
fn height_zero_is_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = rank1(dir.path(), -2, 0, None);
    let (_, out, _) = run(&[
        "graph",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let g: GraphDoc = serde_json::from_str(&out).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));
}

fn counts(cfg: &Path, target: &str) -> CountDoc {
    let (code, out, err) = run(&[
        "count",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        target,
        "--format",
        "json",
    ]);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn count_tables() {
    let dir = tempfile::tempdir().unwrap();
    let c: Vec<usize> = counts(&rank1(dir.path(), -2, 4, None), "binfty")
        .rows
        .iter()
        .map(|r| r.count)
        .collect();
    assert_eq!(c, vec![1, 1, 2, 4, 8]);
    let c: Vec<usize> = counts(&rank1(dir.path(), 0, 5, None), "binfty")
        .rows
        .iter()
        .map(|r| r.count)
        .collect();
    assert_eq!(c, vec![1, 1, 2, 3, 5, 7]);
    let doc = counts(&rank1(dir.path(), 2, 4, Some(2)), "blambda");
    assert_eq!(
        doc.rows.iter().map(|r| r.count).collect::<Vec<_>>(),
        vec![1, 1, 1]
    );
    assert_eq!(doc.total, 3);
    assert_eq!(doc.rows[1].weight, "2Li - ai");

    let cfg = rank1(dir.path(), 2, 4, Some(2));
    let (_, text, _) = run(&[
        "count",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        "blambda",
    ]);
    assert_eq!(
        text.lines()
            .last()
            .unwrap()
            .split_whitespace()
            .collect::<Vec<_>>(),
        vec!["total", "3"]
    );
}

#[test]
fn tensor_target() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "a2.json", A2);
    let (code, out, _) = run(&[
        "graph",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        "tensor:1,2,c",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let g: GraphDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(g.nodes[0].repr, "(0) ⊗ (0) ⊗ c");
}

#[test]
fn verify_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = write_config(dir.path(), "a2.json", A2);
    for suite in ["axioms", "embedding", "sum", "pi", "normal", "seqindep"] {
        let (code, out, err) = run(&["verify", "--config", a2.to_str().unwrap(), "--suite", suite]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["suite"], suite);
    }
    let small = write_config(
        dir.path(),
        "a2s.json",
        r#"{"indices":["1","2"],"cartan":[[2,-1],[-1,2]],"symmetrizers":[1,1],"height":2}"#,
    );
    let (code, _, _) = run(&[
        "verify",
        "--config",
        small.to_str().unwrap(),
        "--suite",
        "assoc",
    ]);
    assert_eq!(code, 0);
    let iso = rank1(dir.path(), 0, 5, None);
    let (code, _, _) = run(&[
        "verify",
        "--config",
        iso.to_str().unwrap(),
        "--suite",
        "embedding",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn injected_fault_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "a2.json", A2);
    let (code, out, _) = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "axioms",
        "--inject-fault",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], false);
    let w = &v["checks"][0]["witnesses"][0];
    assert_eq!(w["clause"], "AxiomPairing");
    assert_eq!(w["node"], "⋯⊗(0)");
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(
        dir.path(),
        "bad.json",
        r#"{"indices":["i"],"cartan":[[3]],"symmetrizers":[1],"height":1}"#,
    );
    let (code, _, err) = run(&["graph", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("cartan"), "{err}");

    let cfg = rank1(dir.path(), 2, 2, Some(-1));
    let (code, _, err) = run(&[
        "graph",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        "blambda",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("lambda"), "{err}");

    let cfg = rank1(dir.path(), 2, 2, None);
    let (code, _, err) = run(&["verify", "--config", cfg.to_str().unwrap(), "--suite", "pi"]);
    assert_eq!(code, 2);
    assert!(err.contains("lambda"), "{err}");
    let (code, _, _) = run(&[
        "graph",
        "--config",
        cfg.to_str().unwrap(),
        "--target",
        "nonsense",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["graph", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(code, 2);
}
