use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use diffsets_core::{GroupSubset, Objective};
use serde_json::Value;

fn diffsets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffsets"))
        .args(args)
        .env_remove("DIFFSETS_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Timings are the only nondeterministic output.
fn normalize_json_lines(s: &str) -> String {
    s.lines()
        .map(|line| {
            let mut v: Value = serde_json::from_str(line).unwrap();
            zero_millis(&mut v);
            serde_json::to_string(&v).unwrap() + "\n"
        })
        .collect()
}

fn zero_millis(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k == "millis" {
                    *x = Value::from(0);
                } else {
                    zero_millis(x);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(zero_millis),
        _ => {}
    }
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

fn run_ok(args: &[&str]) -> String {
    let out = diffsets(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

#[test]
fn golden_formula() {
    let mut text = run_ok(&["formula", "rho-minus", "--group", "3,3", "--r", "4"]);
    text += &run_ok(&["formula", "rho-minus", "--group", "12", "--r", "5"]);
    text += &run_ok(&["formula", "rho-minus", "--group", "4,2", "--r", "3"]);
    text += &run_ok(&["formula", "mu", "--group", "2,4", "--r", "3", "--s", "3"]);
    text += &run_ok(&["formula", "vector-space", "-p", "5", "-d", "2", "-r", "11"]);
    text += &run_ok(&["formula", "rho-pm", "-p", "5", "-m", "12"]);
    golden("formula.txt", &text);
}

#[test]
fn rho_minus_status_in_json() {
    let out = run_ok(&[
        "--format",
        "json",
        "formula",
        "rho-minus",
        "-g",
        "3,3",
        "-r",
        "4",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 9);
    assert_eq!(v["status"], "theorem-vector-space");
    let out = run_ok(&[
        "--format",
        "json",
        "formula",
        "rho-minus",
        "-g",
        "12",
        "-r",
        "5",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "theorem-cyclic");
}

#[test]
fn golden_construct() {
    let mut text = run_ok(&[
        "construct",
        "coset-progression",
        "-n",
        "12",
        "-r",
        "5",
        "-d",
        "3",
    ]);
    text += &run_ok(&[
        "construct",
        "product",
        "-g",
        "2,4",
        "-r",
        "3",
        "--d1",
        "2",
        "--d2",
        "1",
    ]);
    text += &run_ok(&["construct", "best", "-g", "3,3", "-r", "4"]);
    text += &run_ok(&["construct", "lex-prefix", "-p", "3", "-d", "2", "-r", "4"]);
    golden("construct.txt", &text);
}

#[test]
fn golden_search() {
    let mut lines = run_ok(&["--format", "json", "search", "-g", "3,3", "-r", "4"]);
    lines += &run_ok(&[
        "--format",
        "json",
        "search",
        "-g",
        "8",
        "-r",
        "3",
        "--objective",
        "sum",
    ]);
    lines += &run_ok(&[
        "--format",
        "json",
        "search",
        "-g",
        "2,4",
        "-r",
        "3",
        "--mode",
        "exhaustive",
    ]);
    golden("search.jsonl", &normalize_json_lines(&lines));
}

#[test]
fn golden_signed() {
    let lines = run_ok(&[
        "--format",
        "json",
        "signed",
        "-g",
        "5,5",
        "-m",
        "6",
        "--check-bound",
    ]);
    golden("signed.jsonl", &normalize_json_lines(&lines));
}

#[test]
fn golden_verify_conjecture() {
    let lines = run_ok(&["--format", "json", "verify-conjecture", "--max-order", "6"]);
    golden("verify-conjecture.jsonl", &normalize_json_lines(&lines));
}

#[test]
fn golden_lemmas() {
    let mut text = run_ok(&["lemmas", "a1", "--lambda", "2,1"]);
    text += &run_ok(&["lemmas", "a1", "--lambda", "1,1"]);
    text += &run_ok(&["lemmas", "a2", "-p", "7", "-n", "1", "--lambda", "4,3,1"]);
    text += &run_ok(&["lemmas", "sweep-a1", "--max-len", "4", "--max-part", "4"]);
    text += &run_ok(&["lemmas", "sweep-a2", "-p", "7"]);
    text += &run_ok(&[
        "lemmas",
        "sweep-hyperplane",
        "-p",
        "2",
        "-d",
        "3",
        "-m",
        "1",
    ]);
    text += &run_ok(&[
        "lemmas",
        "sweep-hyperplane",
        "-p",
        "3",
        "-d",
        "3",
        "-m",
        "1",
        "--samples",
        "200",
        "--seed",
        "5",
    ]);
    golden("lemmas.txt", &text);
}

#[test]
fn a1_tight_case_has_zero_slack() {
    let out = run_ok(&["--format", "json", "lemmas", "a1", "--lambda", "2,1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outcome"], "holds");
    assert_eq!(v["slack"], 0);
    assert_eq!(v["ferrers_containment"], true);
}

#[test]
fn verify_conjecture_csv_all_equal() {
    let out = run_ok(&["verify-conjecture", "--max-order", "12", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let equal = headers.iter().position(|h| h == "equal").unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    // Σ_{N ≤ 12} (number of groups of order N) · N
    let expected: usize = [1, 2, 3, 2 * 4, 5, 6, 7, 3 * 8, 2 * 9, 10, 11, 2 * 12]
        .iter()
        .sum();
    assert_eq!(rows.len(), expected);
    assert!(rows.iter().all(|r| &r[equal] == "true"));
}

#[test]
fn verify_conjecture_text_streams_and_summarises() {
    let out = run_ok(&["verify-conjecture", "--max-order", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 15);
    assert!(lines[..14].iter().all(|l| l.ends_with("equal")));
    assert!(lines[14].contains("0 counterexamples"));
}

#[test]
fn witness_round_trip_reproduces_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Vec<&str>, Objective, &str)> = vec![
        (
            vec!["construct", "best", "-g", "2,6", "-r", "5"],
            Objective::Diff,
            "achieved_size",
        ),
        (
            vec!["construct", "lex-prefix", "-p", "3", "-d", "3", "-r", "10"],
            Objective::Diff,
            "achieved_size",
        ),
        (
            vec!["search", "-g", "4,2", "-r", "5", "--objective", "sum"],
            Objective::Sum,
            "minimum",
        ),
        (
            vec!["search", "-g", "3,3", "-r", "5", "--objective", "signed2"],
            Objective::Signed2,
            "minimum",
        ),
        (
            vec!["signed", "-g", "7", "-m", "3"],
            Objective::Signed2,
            "minimum",
        ),
    ];
    for (i, (args, objective, field)) in cases.into_iter().enumerate() {
        let path = dir.path().join(format!("w{i}.json"));
        let mut full = vec!["--format", "json"];
        full.extend(&args);
        full.extend(["--witness", path.to_str().unwrap()]);
        let v: Value = serde_json::from_str(&run_ok(&full)).unwrap();
        let set = GroupSubset::from_witness_json(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(
            objective.measure(&set).unwrap(),
            v[field].as_u64().unwrap() as usize,
            "{args:?}"
        );
        let listed: Vec<Vec<usize>> = serde_json::from_value(v["witness"].clone()).unwrap();
        assert_eq!(
            set,
            GroupSubset::from_witness_json(
                &serde_json::json!({"group": v["group"], "elements": listed}).to_string()
            )
            .unwrap()
        );
    }
}

#[test]
fn hyperplane_reads_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.json");
    fs::write(
        &path,
        r#"{"group":"2,2,2","elements":[[0,0,0],[0,0,1],[0,1,0],[0,1,1]]}"#,
    )
    .unwrap();
    let out = run_ok(&[
        "--format",
        "json",
        "lemmas",
        "hyperplane",
        "-p",
        "2",
        "-d",
        "3",
        "-m",
        "1",
        "-w",
        path.to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["min_intersection"], 2);
    assert_eq!(v["implication_ok"], true);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run_ok(&[
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
        "formula",
        "rho-plus",
        "-g",
        "10",
        "-r",
        "4",
    ]);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"], 5);
}

#[test]
fn exit_code_one_for_bad_input() {
    for args in [
        vec!["formula", "rho-minus", "--group", "3,x", "--r", "2"],
        vec!["formula", "rho-minus", "--group", "0", "--r", "1"],
        vec!["formula", "rho-minus", "--group", "3,3", "--r", "10"],
        vec!["formula", "rho-pm", "-p", "5", "-m", "13"],
        vec!["formula", "vector-space", "-p", "4", "-d", "2", "-r", "3"],
        vec![
            "construct",
            "coset-progression",
            "-n",
            "12",
            "-r",
            "5",
            "-d",
            "5",
        ],
        vec!["lemmas", "a1", "--lambda", "1,2"],
        vec!["lemmas", "sweep-a2", "-p", "9"],
        vec!["search", "-g", "3", "-r", "0"],
        vec!["no-such-command"],
    ] {
        let out = diffsets(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn error_message_names_the_precondition() {
    let out = diffsets(&["formula", "rho-minus", "--group", "3,3", "--r", "10"]);
    assert!(stderr(&out).contains("r = 10"), "{}", stderr(&out));
    let out = diffsets(&["formula", "rho-pm", "-p", "5", "-m", "13"]);
    assert!(
        stderr(&out).contains("unsupported regime"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn exit_code_two_when_budget_refuses() {
    let out = diffsets(&["search", "-g", "11,11", "-r", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("estimated"));
    let out = diffsets(&["search", "-g", "12", "-r", "6", "--node-budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explicit_mu_below_the_constraint_is_not_a_counterexample() {
    let out = diffsets(&[
        "lemmas",
        "a2",
        "-p",
        "7",
        "-n",
        "1",
        "--lambda",
        "4,3,1",
        "--mu",
        "7,6,5,3,1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("holds"));
    let out = diffsets(&[
        "lemmas",
        "a2",
        "-p",
        "7",
        "-n",
        "1",
        "--lambda",
        "4,3,1",
        "--mu",
        "1,1,1,1,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("hypothesis not met"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(diffsets(&["--help"]).status.code(), Some(0));
    assert_eq!(diffsets(&["--version"]).status.code(), Some(0));
    assert_eq!(diffsets(&["search", "--help"]).status.code(), Some(0));
}

#[test]
fn workers_env_var_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_diffsets"))
        .args(["--format", "json", "search", "-g", "2,2,3", "-r", "5"])
        .env("DIFFSETS_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["minimum"], v["prediction"]);
    let out = diffsets(&["search", "-g", "3", "-r", "2", "--workers", "x"]);
    assert_eq!(out.status.code(), Some(1));
}
