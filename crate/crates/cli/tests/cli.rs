use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const E1: &str = "P 0 0\nP 10 0\nR 4 0\nB 6 0\n";

fn rbp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn exact_on_e1_reports_weight_18() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "e1.txt", E1);
    let o = rbp(&["solve", &inst, "--algo", "exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("weight 18.0"), "{out}");
    assert!(out.contains("purple_edges 1"));
    assert!(out.contains("solver exact"));
}

#[test]
fn out_flag_writes_edges_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "e1.txt", E1);
    let edges = dir.path().join("edges.txt");
    let o = rbp(&["solve", &inst, "--algo", "exact", "--out", edges.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = fs::read_to_string(&edges).unwrap();
    assert_eq!(written.lines().filter(|l| !l.trim().is_empty()).count(), 3);
    assert!(!stdout(&o).contains("0 1\n"));
}

#[test]
fn circle_on_collinear_input_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "e1.txt", E1);
    let o = rbp(&["solve", &inst, "--algo", "circle"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("concyclic") && err.contains("residual"), "{err}");
}

#[test]
fn auto_picks_line_for_collinear_input() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "line.txt", "R 0 0\nP 1 1\nB 2 2\nP 3 3\nR 4 4\nB 5 5\n");
    let o = rbp(&["solve", &inst]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solver line"));
    assert!(stderr(&o).contains("line solver"));
}

#[test]
fn auto_picks_exact_for_small_general_input() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "g.txt", "P 0 0\nR 3 1\nB 1 4\nR 5 5\nB 6 2\n");
    let o = rbp(&["solve", &inst, "--algo", "auto"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solver exact"));
}

#[test]
fn approximations_match_across_reference_sources() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "e1.txt", E1);
    let a = rbp(&["solve", &inst, "--algo", "approx-union", "--reference", "exact"]);
    let b = rbp(&["solve", &inst, "--algo", "approx-union", "--reference", "oracle"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("ratio 1.111111111111"), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn reference_file_requires_path() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "e1.txt", E1);
    let o = rbp(&["solve", &inst, "--algo", "approx-a", "--reference", "file"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_draws_points_and_edges_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "e1.txt", E1);
    let edges = write_file(dir.path(), "edges.txt", "0 1\n0 2\n1 3\n");
    let a = rbp(&["render", &inst, &edges]);
    let b = rbp(&["render", &inst, &edges]);
    assert_eq!(a.status.code(), Some(0));
    let svg = stdout(&a);
    assert_eq!(svg.matches("<circle").count(), 4);
    assert_eq!(svg.matches("<line").count(), 3);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_martini_carries_landmarks() {
    let o = rbp(&["gen", "martini", "--param", "m=1", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("# landmark p_N 0"));
    assert!(text.contains("# landmark p_S 1"));
}

#[test]
fn gen_output_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let o = rbp(&["gen", "random", "--param", "n=12", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = rbp(&["validate", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    assert!(stdout(&v).contains("points 12"));
}

#[test]
fn gen_rejects_bad_parameter() {
    let o = rbp(&["gen", "random", "--param", "n"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rbp(&["gen", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_flags_non_spanning_edges() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "e1.txt", E1);
    let good = write_file(dir.path(), "good.txt", "0 1\n0 2\n1 3\n");
    let bad = write_file(dir.path(), "bad.txt", "0 2\n1 3\n");
    let invalid = write_file(dir.path(), "invalid.txt", "2 3\n0 1\n");
    assert_eq!(rbp(&["validate", &inst, "--edges", &good]).status.code(), Some(0));
    let o = rbp(&["validate", &inst, "--edges", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("components"));
    assert_eq!(rbp(&["validate", &inst, "--edges", &invalid]).status.code(), Some(2));
}

#[test]
fn malformed_instance_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write_file(dir.path(), "bad.txt", "P 0 0\nX 1 1\n");
    let o = rbp(&["solve", &inst]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn bad_flag_is_a_usage_error() {
    let o = rbp(&["solve", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(1));
    let o = rbp(&["solve", "x.txt", "--algo", "quantum"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_prints_a_table() {
    let o = rbp(&["bench", "--solver", "exact", "--sizes", "6,7", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("exact"));
}
