use std::io::Write;
use std::process::{Command, Output, Stdio};

use cops_core::engine::{validate_transcript, Transcript};
use cops_core::Graph;

fn cops(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cops"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(s) = stdin {
        pipe.write_all(s.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn petersen_file(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("petersen.txt");
    let o = cops(&["gen", "petersen", "-o", path.to_str().unwrap()], None);
    assert!(o.status.success());
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_petersen_prints_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = cops(&["solve", "--kmax", "3", &petersen_file(&dir)], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("3"));
}

#[test]
fn generated_cycle_pipes_into_solve() {
    let c4 = stdout(&cops(&["gen", "cycle", "4"], None));
    let o = cops(&["solve", "--kmax", "2"], Some(&c4));
    assert_eq!(stdout(&o).lines().next(), Some("2"));
}

#[test]
fn bound_at_1024_is_exact() {
    let o = cops(&["bound", "--L", "1024", "--format", "json"], None);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = &v["params"];
    assert_eq!(
        (p["t"]["lo"].as_f64(), p["t"]["exact"].as_bool()),
        (Some(2.0), Some(true))
    );
    assert_eq!(p["p"]["lo"].as_f64(), Some(2f64.powi(-12)));
    assert_eq!(p["p"]["exact"].as_bool(), Some(true));
    assert_eq!(p["threshold"]["lo"].as_f64(), Some(4.0));
    let table = stdout(&cops(&["bound", "--L", "1024"], None));
    assert!(table.contains("threshold  4\n"), "{table}");
}

#[test]
fn exit_codes() {
    assert_eq!(cops(&["solve", "--bogus"], None).status.code(), Some(2));
    assert_eq!(cops(&["frobnicate"], None).status.code(), Some(2));
    let bad = cops(&["solve"], Some("3 2\n0 1\n1 x\n"));
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));
    let dir = tempfile::tempdir().unwrap();
    let o = cops(
        &[
            "solve",
            "--kmax",
            "3",
            "--max-states",
            "50",
            &petersen_file(&dir),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn play_is_deterministic_and_legal() {
    let dir = tempfile::tempdir().unwrap();
    let g = petersen_file(&dir);
    let args = [
        "--seed", "9", "--format", "json", "play", "--cops", "oracle", "--k", "3", "--robber",
        "random", &g,
    ];
    let (a, b) = (cops(&args, None), cops(&args, None));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let t: Transcript = serde_json::from_str(&stdout(&a)).unwrap();
    let graph = Graph::parse_edge_list(&std::fs::read_to_string(&g).unwrap()).unwrap();
    validate_transcript(&graph, &t).unwrap();
    assert!(t.outcome.is_caught());
    assert_eq!(t.config.seed, 9);
}

#[test]
fn strategies_emit_valid_transcripts() {
    let grid = stdout(&cops(&["gen", "grid", "5", "4"], None));
    let g = Graph::parse_edge_list(&grid).unwrap();
    for args in [
        vec![
            "--format",
            "json",
            "strategy",
            "meyniel",
            "--threshold",
            "3",
        ],
        vec!["--format", "json", "strategy", "expander", "--p", "0.3"],
        vec![
            "--format", "json", "strategy", "guard", "--from", "0", "--to", "19", "--start", "10",
        ],
        vec![
            "--format",
            "json",
            "strategy",
            "expander",
            "--invisible",
            "--robber",
            "random",
        ],
    ] {
        let o = cops(&args, Some(&grid));
        assert!(
            o.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let t: Transcript = serde_json::from_value(v.clone()).unwrap();
        validate_transcript(&g, &t).unwrap();
        assert!(v["strategy"].is_object());
    }
    let o = cops(
        &[
            "--format",
            "json",
            "strategy",
            "meyniel",
            "--threshold",
            "3",
        ],
        Some(&grid),
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = &v["strategy"];
    assert_eq!(
        s["cops_used"],
        s["guards"].as_u64().unwrap() + s["family_cops"].as_u64().unwrap()
    );
    assert_eq!(v["outcome"]["kind"], "caught");
}

#[test]
fn verify_with_zero_budget_reports_skips() {
    let o = cops(&["--format", "json", "verify", "--budget", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "cops-verify/1");
    let crit = v["criteria"].as_array().unwrap();
    assert!(crit
        .iter()
        .all(|c| c["failures"].as_array().unwrap().is_empty()));
    assert!(crit
        .iter()
        .any(|c| c["checked"] == 0 && c["skipped"].as_u64() > Some(0)));
}

#[test]
fn verify_rejects_a_corrupted_corpus() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.txt"), "4 1\n0 9\n").unwrap();
    let o = cops(
        &["verify", "--budget", "0", dir.path().to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.txt"));
}
