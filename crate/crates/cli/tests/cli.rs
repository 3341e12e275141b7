use std::path::PathBuf;
use std::process::{Command, Output};

fn circwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circwl"))
        .args(args)
        .env_remove("CIRCWL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("circwl-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn close_prints_the_rank_three_scheme() {
    let o = circwl(&["close", "--graph", "n=5;S=1,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=5\nC: 0\nC: 1,4\nC: 2,3\n");
}

#[test]
fn validate_accepts_the_trivial_scheme() {
    let dir = scratch("validate");
    let f = dir.join("trivial5.scheme");
    std::fs::write(&f, "n=5\nC: 0\nC: 1,2,3,4\n").unwrap();
    let o = circwl(&["validate", "--scheme", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "valid, rank 2\n");
}

#[test]
fn validate_rejects_a_partition_that_is_not_coherent() {
    let o = circwl(&["validate", "--scheme", "n=6\nC: 1,5\nC: 2,3,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn closed_output_validates_and_closes_to_itself() {
    for g in ["n=12;S=1,11,6", "n=8;S=2,6", "n=9;S=1,8,3"] {
        let closed = stdout(&circwl(&["close", "--graph", g]));
        let v = circwl(&["validate", "--scheme", &closed]);
        assert!(v.status.success(), "{g}");
        assert!(stdout(&v).starts_with("valid, rank"));
        assert_eq!(stdout(&circwl(&["close", "--scheme", &closed])), closed);
    }
}

#[test]
fn matrix_input_round_trips() {
    let m = "n=3\n0 1 1\n1 0 1\n1 1 0\n";
    let o = circwl(&["close", "--input", m]);
    assert!(o.status.success());
    let v = circwl(&["validate", "--input", &stdout(&o)]);
    assert_eq!(stdout(&v), "valid, rank 2\n");
}

#[test]
fn main_theorem_run_stays_within_the_bound() {
    let o = circwl(&["verify", "--theorem", "main", "--orders", "4..12"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("order"));
    assert!(out.trim_end().ends_with("within bound: true"));
}

#[test]
fn csv_report_has_the_summary_columns() {
    let o = circwl(&[
        "verify",
        "--theorem",
        "main",
        "--orders",
        "5",
        "--format",
        "csv",
    ]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("order,connectionSet,rank,omega,estimate,bound,witnesses")
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let args = ["verify", "--theorem", "reduction", "--orders", "8..12"];
    let one = circwl(&[&args[..], &["--jobs", "1"]].concat());
    let four = circwl(&[&args[..], &["--jobs", "4"]].concat());
    let again = circwl(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(circwl(&["close", "--bogus"]).status.code(), Some(2));
    assert_eq!(circwl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(circwl(&["verify"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_one() {
    let bad = circwl(&["close", "--graph", "n=5;S=9"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("out of range"));
    assert_eq!(
        circwl(&["close", "--scheme", "/nonexistent/file"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(circwl(&["close"]).status.code(), Some(1));
}

#[test]
fn caps_name_their_flag() {
    let o = circwl(&["wlm", "--graph", "n=6;S=1,5", "-m", "4", "--max-m", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-m"));
    let o = circwl(&[
        "wlm",
        "--graph",
        "n=10;S=1,9",
        "-m",
        "3",
        "--memory-cap",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--memory-cap"));
}

#[test]
fn closure_cache_round_trips() {
    let dir = scratch("cache");
    let d = dir.to_str().unwrap();
    let first = circwl(&["close", "--graph", "n=10;S=1,9,5", "--cache-dir", d]);
    let entry = dir.join("n10_S1-5-9.scheme");
    assert!(entry.exists());
    assert_eq!(std::fs::read_to_string(&entry).unwrap(), stdout(&first));
    let second = circwl(&["close", "--graph", "n=10; S=9,5,1", "--cache-dir", d]);
    assert_eq!(first.stdout, second.stdout);
    // a corrupt entry is ignored and rewritten
    std::fs::write(&entry, "garbage").unwrap();
    let third = circwl(&["close", "--graph", "n=10;S=1,9,5", "--cache-dir", d]);
    assert_eq!(first.stdout, third.stdout);
    assert_eq!(std::fs::read_to_string(&entry).unwrap(), stdout(&first));
}

#[test]
fn extend_reports_its_postconditions() {
    let o = circwl(&["extend", "--graph", "n=12;S=6", "--check"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("# rank_increases: true"));
    assert!(out.contains("# singular_count_drops_by_one: true"));
    let o = circwl(&["extend", "--graph", "n=12;S=1,11,6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn wlm_agrees_with_the_game() {
    let o = circwl(&[
        "wlm",
        "--graph",
        "n=8;S=1,7",
        "-m",
        "2",
        "--against",
        "n=8;S=3,5",
        "--oracle",
    ]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("DISAGREES"));
}

#[test]
fn json_output_parses() {
    for args in [
        &["analyze", "--graph", "n=12;S=6"][..],
        &["iso", "--graph", "n=5;S=1,4", "--against", "n=5;S=2,3"],
        &["multiplier", "--graph", "n=8;S=1,7", "--unit", "3"],
        &["enumerate", "-n", "7", "--schemes"],
    ] {
        let o = circwl(&[args, &["--format", "json"]].concat());
        assert!(o.status.success(), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(!v.is_null());
    }
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_circwl"))
        .args(["validate", "--scheme", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"n=4\nC: 0\nC: 1,3\nC: 2\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "valid, rank 3\n");
}
