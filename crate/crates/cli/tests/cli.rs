use std::path::PathBuf;
use std::process::{Command, Output};

fn partstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partstat"))
        .args(args)
        .env_remove("PARTSTAT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = partstat(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    partstat(args).status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("partstat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn dimension_distribution_csv() {
    assert_eq!(
        stdout(&["dist", "dim", "--n", "5"]),
        "value,count\n0,16\n1,12\n2,13\n3,9\n4,2\n"
    );
    assert_eq!(
        stdout(&["dist", "int", "--n", "4"]),
        "value,count\n0,14\n1,1\n"
    );
}

#[test]
fn recursion_and_enumeration_outputs_are_identical() {
    for target in ["dim", "int"] {
        for n in 0..=10 {
            let n = n.to_string();
            assert_eq!(
                stdout(&["dist", target, "--n", &n]),
                stdout(&["dist", target, "--n", &n, "--brute"]),
                "{target} n={n}"
            );
        }
    }
}

#[test]
fn fits_mean_dimension() {
    let out = stdout(&["fit", "--target", "dim", "--k", "1"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("j=1: 4 + 1*n ; j=2: -2"));
    assert_eq!(lines.next(), Some("shift 1: 4 1"));
    assert_eq!(lines.next(), Some("shift 2: -2"));
    let json: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(json["terms"][0]["coefficients"][1], "1");
}

#[test]
fn fits_pattern_statistic() {
    let doc = scratch("blocks.json");
    std::fs::write(&doc, r#"{"length": 1, "firsts": [1]}"#).unwrap();
    let out = stdout(&[
        "fit",
        "--pattern",
        doc.to_str().unwrap(),
        "--profile-degree",
        "1",
        "--profile-k",
        "1",
    ]);
    assert_eq!(out.lines().next(), Some("j=0: -1 ; j=1: 1"));
}

#[test]
fn eval_and_aggregate() {
    assert_eq!(
        stdout(&["eval", "--builtin", "dimension", "--partition", "1356|27|4"]),
        "6\n"
    );
    assert_eq!(
        stdout(&[
            "eval",
            "--builtin",
            "intertwining",
            "--partition",
            "0,1,0,1"
        ]),
        "1\n"
    );
    let doc = scratch("nestings.json");
    std::fs::write(
        &doc,
        r#"{"length": 4, "blocks": [[1,4],[2,3]], "arcs": [[1,4],[2,3]]}"#,
    )
    .unwrap();
    assert_eq!(
        stdout(&[
            "eval",
            "--pattern",
            doc.to_str().unwrap(),
            "--partition",
            "14|23"
        ]),
        "1\n"
    );
    // sum of block counts over partitions of [4] is B_5 - B_4
    assert_eq!(
        stdout(&["aggregate", "--builtin", "blocks", "--n", "4"]),
        "37\n"
    );
}

#[test]
fn bell_numbers() {
    assert_eq!(
        stdout(&["bell", "--max", "4"]),
        "n,value\n0,1\n1,1\n2,2\n3,5\n4,15\n"
    );
    let out = stdout(&["bell", "--max", "11", "--mod", "4"]);
    let residues: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(
        residues,
        ["1", "1", "2", "1", "3", "0", "3", "1", "0", "3", "3", "2"]
    );
}

#[test]
fn moments_and_asymptotics() {
    assert_eq!(
        stdout(&["moments", "dim", "--n", "4", "--k", "1"]),
        "k,sum\n0,15\n1,10\n"
    );
    let table = stdout(&["asym", "--target", "int", "--n", "200"]);
    assert!(table.starts_with("quantity,exact,estimate,relative_error,error_order\n"));
    assert_eq!(table.lines().count(), 7);
    assert!(table.contains("\nmean,"));
}

#[test]
fn output_file_and_plot_script() {
    let csv = scratch("dim8.csv");
    stdout(&["dist", "dim", "--n", "8", "--out", csv.to_str().unwrap()]);
    assert!(std::fs::read_to_string(&csv)
        .unwrap()
        .ends_with("11,48\n12,30\n"));
    let script = scratch("dim8.py");
    stdout(&[
        "plot",
        "--input",
        csv.to_str().unwrap(),
        "--out",
        script.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&script).unwrap();
    assert!(text.contains("savefig(\"dim8.png\""));
    assert!(text.contains("128, 192, 320"));
}

#[test]
fn deterministic_output() {
    let args = ["fit", "--target", "int", "--k", "2"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn user_errors_exit_with_one() {
    assert_eq!(exit_code(&["dist", "dim", "--n", "15", "--brute"]), 1);
    assert_eq!(exit_code(&["dist", "dim", "--n", "3", "--bogus"]), 1);
    assert_eq!(
        exit_code(&["eval", "--builtin", "nope", "--partition", "1"]),
        1
    );
    assert_eq!(
        exit_code(&["eval", "--builtin", "blocks", "--partition", "1|1"]),
        1
    );
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"length": 2, "arcs": [[1,2]]}"#).unwrap();
    assert_eq!(
        exit_code(&["aggregate", "--pattern", bad.to_str().unwrap(), "--n", "3"]),
        1
    );
    // nestings need a wider profile than N = 0, k = 0
    assert_eq!(
        exit_code(&[
            "fit",
            "--builtin",
            "nestings",
            "--profile-degree",
            "0",
            "--profile-k",
            "0"
        ]),
        1
    );
    assert_eq!(
        exit_code(&[
            "eval",
            "--pattern",
            "/nonexistent/p.json",
            "--partition",
            "1"
        ]),
        1
    );
    let out = partstat(&["dist", "dim", "--n", "15", "--brute"]);
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn thread_count_variable() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_partstat"))
            .args(["aggregate", "--builtin", "levels", "--n", "8"])
            .env("PARTSTAT_THREADS", value)
            .output()
            .unwrap()
    };
    let ok = run("2");
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "6139\n");
    assert_eq!(run("lots").status.code(), Some(1));
}
