//! End-to-end tests driving the compiled binary.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfdom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("perfdom-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn sign_string(pattern: u32, len: usize) -> String {
    (0..len)
        .map(|i| if pattern >> i & 1 == 0 { '+' } else { '-' })
        .collect()
}

fn construct_to(file: &Path, p: u32, eps: &str, k: u32) -> Output {
    run(&[
        "construct",
        "--p",
        &p.to_string(),
        "--eps",
        eps,
        "--k",
        &k.to_string(),
        "--out",
        file.to_str().unwrap(),
    ])
}

#[test]
fn construct_then_verify_round_trips_for_every_spec() {
    let dir = temp_dir("roundtrip");
    for p in [3u32, 5, 7, 11] {
        let n = (p as usize - 1) / 2;
        for pattern in 0..(1u32 << (n - 1)) {
            let eps = sign_string(pattern, n - 1);
            for k in 0..p {
                let file = dir.join(format!("p{p}-{pattern}-{k}.code"));
                let out = construct_to(&file, p, &eps, k);
                assert_eq!(code(&out), 0, "construct failed: {}", stderr(&out));
                let v = run(&["verify", file.to_str().unwrap()]);
                assert_eq!(code(&v), 0, "verify failed for p={p} eps={eps} k={k}");
                assert!(stdout(&v).contains("perfect"));
                std::fs::remove_file(&file).unwrap();
            }
        }
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn hyperplane_construction_round_trips_and_classifies() {
    let dir = temp_dir("hyperplane");
    for (p, normal) in [(5u32, "2,1"), (7, "1,3,2"), (7, "3,6,2"), (11, "2,5,1,4,3")] {
        for k in [0u32, 3] {
            let file = dir.join(format!("h{p}-{k}.code"));
            let out = run(&[
                "construct",
                "--p",
                &p.to_string(),
                "--a",
                normal,
                "--k",
                &k.to_string(),
                "--out",
                file.to_str().unwrap(),
            ]);
            assert_eq!(code(&out), 0, "construct failed: {}", stderr(&out));
            let v = run(&["verify", file.to_str().unwrap()]);
            assert_eq!(code(&v), 0);
            if p <= 7 {
                let c = run(&["classify", file.to_str().unwrap(), "--format", "json"]);
                assert_eq!(code(&c), 0);
                let doc: Value = serde_json::from_str(&stdout(&c)).unwrap();
                assert_eq!(doc["hyperplane"], Value::Bool(true));
            }
            std::fs::remove_file(&file).unwrap();
        }
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn construct_prints_canonical_form_to_stdout() {
    let out = run(&["construct", "--p", "5", "--eps", "+", "--k", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "p=5 n=2\n0,0\n1,2\n2,4\n3,1\n4,3\n");
}

#[test]
fn spectrum_json_and_text_agree() {
    let j = run(&["spectrum", "--p", "5"]);
    assert_eq!(code(&j), 0);
    let doc: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(doc["kernel_size"], 8);
    assert_eq!(doc["rank"], 17);
    assert_eq!(doc["vertex_count"], 25);

    let t = run(&["spectrum", "--p", "5", "--format", "text"]);
    assert_eq!(code(&t), 0);
    let text = stdout(&t);
    assert!(text.contains("kernel size: 8"));
    assert!(text.contains("rank(A+I): 17"));
}

#[test]
fn spectrum_lists_kernel_and_skips_oversized_rank() {
    let j = run(&["spectrum", "--p", "3", "--list-kernel"]);
    let doc: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(doc["kernel"], serde_json::json!([[1], [2]]));
    assert_eq!(doc["rank"], 1);

    let j = run(&["spectrum", "--p", "11"]);
    assert_eq!(code(&j), 0, "guard skip is not an error");
    let doc: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(doc["kernel_size"], 3840);
    assert_eq!(doc["rank"], Value::Null);
    assert!(doc["rank_note"].as_str().unwrap().contains("guard"));
}

#[test]
fn enumerate_uses_the_cache_on_the_second_run() {
    let dir = temp_dir("cache");
    let first = run(&[
        "enumerate",
        "--p",
        "5",
        "--cache-dir",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&first), 0);
    let doc: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["count"], 10);
    assert_eq!(doc["from_cache"], Value::Bool(false));
    assert!(dir.join("p5n2.family").exists());

    let second = run(&[
        "enumerate",
        "--p",
        "5",
        "--cache-dir",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&second)).unwrap();
    assert_eq!(doc["count"], 10);
    assert_eq!(doc["from_cache"], Value::Bool(true));

    let text = run(&["enumerate", "--p", "5", "--threads", "2"]);
    assert!(stdout(&text).contains("10 perfect dominating sets"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_reports_witness_and_exit_one() {
    let dir = temp_dir("witness");
    let bad = dir.join("diag.code");
    std::fs::write(&bad, "p=5 n=2\n0,0\n1,1\n2,2\n3,3\n4,4\n").unwrap();
    let v = run(&["verify", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&v), 1);
    let doc: Value = serde_json::from_str(&stdout(&v)).unwrap();
    assert_eq!(doc["perfect"], Value::Bool(false));
    assert_eq!(doc["witness"]["vertex"], serde_json::json!([0, 1]));
    assert_eq!(doc["witness"]["count"], 2);

    // The line property still holds for the diagonal: exit 0 there.
    let l = run(&["lines", bad.to_str().unwrap()]);
    assert_eq!(code(&l), 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lines_reports_violations() {
    let dir = temp_dir("lines");
    let bad = dir.join("short.code");
    std::fs::write(&bad, "p=5 n=2\n0,0\n1,2\n2,4\n3,1\n").unwrap();
    let l = run(&["lines", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&l), 1);
    let doc: Value = serde_json::from_str(&stdout(&l)).unwrap();
    assert_eq!(doc["holds"], Value::Bool(false));
    assert!(doc["witness"]["axis"].is_number());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_and_input_errors_exit_two() {
    // Even p is not a valid cycle length here.
    let out = run(&["construct", "--p", "4", "--eps", "+", "--k", "0"]);
    assert_eq!(code(&out), 2);

    // Sign string of the wrong arity.
    let out = run(&["construct", "--p", "7", "--eps", "+", "--k", "0"]);
    assert_eq!(code(&out), 2);

    // --eps and --a together.
    let out = run(&["construct", "--p", "5", "--eps", "+", "--a", "2,1", "--k", "0"]);
    assert_eq!(code(&out), 2);

    // Dimension flag inconsistent with p.
    let out = run(&["spectrum", "--p", "5", "--n", "3"]);
    assert_eq!(code(&out), 2);

    // Unknown flag (clap handles this one).
    let out = run(&["verify", "--bogus"]);
    assert_eq!(code(&out), 2);

    // Missing file.
    let out = run(&["verify", "/nonexistent/path.code"]);
    assert_eq!(code(&out), 2);

    // Malformed code file: diagnostic carries the line number.
    let dir = temp_dir("badfile");
    let bad = dir.join("bad.code");
    std::fs::write(&bad, "p=5 n=2\n0,0\n7,1\n").unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "stderr: {}", stderr(&out));

    // Oversized enumerations trip the guard (composite and prime alike).
    let out = run(&["enumerate", "--p", "9"]);
    assert_eq!(code(&out), 2);
    let out = run(&["enumerate", "--p", "11"]);
    assert_eq!(code(&out), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classify_requires_a_perfect_code() {
    let dir = temp_dir("classify");
    let bad = dir.join("diag.code");
    std::fs::write(&bad, "p=5 n=2\n0,0\n1,1\n2,2\n3,3\n4,4\n").unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn defining_modes_work_end_to_end() {
    let dir = temp_dir("defining");
    let file = dir.join("p5.code");
    assert_eq!(code(&construct_to(&file, 5, "+", 0)), 0);

    let g = run(&["defining", "--mode", "greedy", file.to_str().unwrap()]);
    assert_eq!(code(&g), 0);
    let doc: Value = serde_json::from_str(&stdout(&g)).unwrap();
    assert_eq!(doc["size"], 2);
    assert_eq!(doc["valid"], Value::Bool(true));
    assert_eq!(doc["family"], "all-perfect");

    let m = run(&["defining", "--mode", "min", file.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&stdout(&m)).unwrap();
    assert_eq!(doc["size"], 2);
    assert_eq!(doc["found"], Value::Bool(true));

    let capped = run(&["defining", "--mode", "min", "--cap", "1", file.to_str().unwrap()]);
    assert_eq!(code(&capped), 0);
    let doc: Value = serde_json::from_str(&stdout(&capped)).unwrap();
    assert_eq!(doc["found"], Value::Bool(false));
    assert_eq!(doc["cap"], 1);

    let p = run(&[
        "defining",
        "--mode",
        "proposition",
        "--p",
        "7",
        "--eps",
        "+-",
        "--k",
        "0",
    ]);
    assert_eq!(code(&p), 0);
    let doc: Value = serde_json::from_str(&stdout(&p)).unwrap();
    assert_eq!(doc["size"], 2);
    assert_eq!(doc["valid"], Value::Bool(true));
    assert_eq!(doc["round_trip"], Value::Bool(true));
    assert_eq!(doc["family"], "eq1");

    // Flag misuse in each direction.
    let bad = run(&["defining", "--mode", "greedy"]);
    assert_eq!(code(&bad), 2);
    let bad = run(&[
        "defining",
        "--mode",
        "proposition",
        file.to_str().unwrap(),
        "--p",
        "7",
        "--k",
        "0",
    ]);
    assert_eq!(code(&bad), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn defining_text_mode_mirrors_json() {
    let dir = temp_dir("defining-text");
    let file = dir.join("p5.code");
    assert_eq!(code(&construct_to(&file, 5, "+", 0)), 0);
    let t = run(&[
        "defining",
        "--mode",
        "greedy",
        file.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(code(&t), 0);
    let text = stdout(&t);
    assert!(text.contains("size: 2"));
    assert!(text.contains("valid: true"));
    std::fs::remove_dir_all(&dir).ok();
}
