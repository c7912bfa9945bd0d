//! Process-level tests: subcommand output, exit codes, and the acceptance
//! checks that need a real binary (file round trips, pipelines, failure
//! paths).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn hexdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexdet"))
        .args(args)
        .env_remove("HEXDET_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn temp_file(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hexdet-cli-tests-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("temp dir");
    dir.join(name)
}

#[test]
fn det_sachs_hexagon() {
    let out = hexdet(&["det", "--grid", "1,1", "--method", "sachs"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "-4\n");
}

#[test]
fn formula_square() {
    let out = hexdet(&["formula", "--n", "2", "--m", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "36\n");
}

#[test]
fn det_reduce_chain() {
    let out = hexdet(&["det", "--grid", "2,1", "--method", "reduce"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "-9\n");
}

#[test]
fn methods_agree_per_invocation() {
    for method in ["bareiss", "sachs", "reduce"] {
        let out = hexdet(&["det", "--grid", "2,2,1", "--method", method]);
        assert_eq!(code(&out), 0, "{method}");
        assert_eq!(stdout(&out), "100\n", "{method}");
    }
}

#[test]
fn trace_ends_with_det_line() {
    let out = hexdet(&["trace", "--n", "1", "--m", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.ends_with("det -4\n"));
    assert!(text.lines().count() > 1);
}

/// Generated file piped back through `det FILE` matches `det --grid` for
/// every small grid, with the default method and with reduce.
#[test]
fn generate_then_det_file_equals_det_grid() {
    for n in 1..=4 {
        for m in 1..=4 {
            let path = temp_file(&format!("grid-{n}-{m}.graph"));
            let gen = hexdet(&[
                "generate",
                "--n",
                &n.to_string(),
                "--m",
                &m.to_string(),
                "-o",
                path.to_str().unwrap(),
            ]);
            assert_eq!(code(&gen), 0);

            let spec = format!("{n},{m}");
            let from_file = hexdet(&["det", path.to_str().unwrap()]);
            let from_grid = hexdet(&["det", "--grid", &spec]);
            assert_eq!(code(&from_file), 0);
            assert_eq!(stdout(&from_file), stdout(&from_grid), "n={n} m={m}");

            let reduce_file = hexdet(&["det", path.to_str().unwrap(), "--method", "reduce"]);
            assert_eq!(code(&reduce_file), 0, "n={n} m={m}");
            assert_eq!(stdout(&reduce_file), stdout(&from_grid), "n={n} m={m}");

            fs::remove_file(&path).ok();
        }
    }
}

/// `generate | det` with no file argument reads stdin.
#[test]
fn pipeline_reads_stdin() {
    let gen = hexdet(&["generate", "--n", "2", "--m", "2"]);
    assert_eq!(code(&gen), 0);
    let mut det = Command::new(env!("CARGO_BIN_EXE_hexdet"))
        .arg("det")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn det");
    det.stdin
        .as_mut()
        .expect("stdin")
        .write_all(&gen.stdout)
        .expect("pipe graph");
    let out = det.wait_with_output().expect("det finishes");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "36\n");
}

#[test]
fn corrupted_file_exits_2() {
    let path = temp_file("corrupt.graph");
    fs::write(&path, "graph 2\n0 1 1\n0 1 2\n").unwrap();
    let out = hexdet(&["det", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "stderr was: {stderr}");
    fs::remove_file(&path).ok();
}

#[test]
fn tampered_grid_file_fails_reduce_shape_check() {
    let path = temp_file("tampered.graph");
    let gen = hexdet(&["generate", "--n", "2", "--m", "1", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&gen), 0);
    let text = fs::read_to_string(&path).unwrap();
    // Flip one edge weight so the file no longer matches its metadata.
    let tampered = text.replacen("0 1 1\n", "0 1 7\n", 1);
    assert_ne!(tampered, text);
    fs::write(&path, tampered).unwrap();
    let out = hexdet(&["det", path.to_str().unwrap(), "--method", "reduce"]);
    assert_eq!(code(&out), 2);
    // Plain elimination still works on the tampered graph.
    let out = hexdet(&["det", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    fs::remove_file(&path).ok();
}

#[test]
fn reduce_without_grid_context_exits_2() {
    let path = temp_file("plain.graph");
    fs::write(&path, "graph 2\n0 1 1\n").unwrap();
    let out = hexdet(&["det", path.to_str().unwrap(), "--method", "reduce"]);
    assert_eq!(code(&out), 2);
    fs::remove_file(&path).ok();
}

#[test]
fn verify_sweep_ok_and_deterministic_across_jobs() {
    let sequential = hexdet(&["verify", "--max-n", "2", "--max-m", "2", "--max-x", "1", "--jobs", "1"]);
    assert_eq!(code(&sequential), 0);
    let parallel = hexdet(&["verify", "--max-n", "2", "--max-m", "2", "--max-x", "1", "--jobs", "4"]);
    assert_eq!(code(&parallel), 0);
    assert_eq!(stdout(&sequential), stdout(&parallel));
    let first = stdout(&sequential);
    assert!(first.starts_with("n=1 m=1 x=0 formula=-4 bareiss=-4 sachs=-4 reduce=-4 OK\n"));
    assert!(first.lines().all(|l| l.ends_with("OK")));
    assert_eq!(first.lines().count(), 2 * 2 * 2);
}

#[test]
fn forced_fail_sweep_exits_1() {
    let out = hexdet(&["verify", "--max-n", "1", "--max-m", "1", "--inject-fail"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn enumeration_cap_exits_3_and_force_overrides() {
    let out = hexdet(&["det", "--grid", "1,1", "--method", "sachs", "--cap", "4"]);
    assert_eq!(code(&out), 3);

    let out = hexdet(&["det", "--grid", "1,1", "--method", "sachs", "--cap", "4", "--force"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "-4\n");

    let out = Command::new(env!("CARGO_BIN_EXE_hexdet"))
        .args(["det", "--grid", "1,1", "--method", "sachs"])
        .env("HEXDET_ENUM_CAP", "4")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_flags_exit_2() {
    let out = hexdet(&["det", "--grid", "1,1", "--method", "nope"]);
    assert_eq!(code(&out), 2);
    let out = hexdet(&["det", "--grid", "banana"]);
    assert_eq!(code(&out), 2);
    let out = hexdet(&["formula", "--n", "0", "--m", "1"]);
    assert_eq!(code(&out), 2);
    let out = hexdet(&["det", "somefile", "--grid", "1,1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn generated_file_is_canonical_with_metadata() {
    let out = hexdet(&["generate", "--n", "1", "--m", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("# hexgrid n=1 m=1 x=0\ngraph 6\n"));
    assert!(text.ends_with('\n'));
}
