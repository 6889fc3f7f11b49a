use std::io::Write;
use std::process::{Command, Output};

use lie_maxclass::cohomology::cohomology_basis;
use lie_maxclass::lie::make_m2;
use lie_maxclass::Form;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn algebra_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn betti_examples() {
    for (args, want) in [
        (["--algebra", "m0", "--n", "7", "--q", "3"], "7"),
        (["--algebra", "m2", "--n", "12", "--q", "3"], "18"),
        (["--algebra", "m0", "--n", "5", "--q", "1"], "2"),
    ] {
        let o = run(&[&["betti"], &args[..]].concat());
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn graded_betti_of_the_infinite_algebra() {
    let o = run(&[
        "betti",
        "--algebra",
        "m2-infinite",
        "--q",
        "3",
        "--degree",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    assert_eq!(
        run(&["betti", "--algebra", "m0-infinite", "--q", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_rows() {
    let o = run(&[
        "table", "--family", "m0", "--n", "3..20", "--q", "3", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(
        values.join(","),
        "1,2,3,4,7,10,11,12,15,18,23,28,35,42,43,44,47,50"
    );

    let o = run(&[
        "table", "--family", "m0", "--n", "3..8", "--q", "2", "--format", "csv",
    ]);
    let text = stdout(&o);
    let values: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(values, ["2", "2", "3", "3", "4", "4"]);

    let o = run(&[
        "table",
        "--family",
        "m2",
        "--n",
        "5..10",
        "--q",
        "3",
        "--check-closed-form",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn table_json_is_sorted_and_complete() {
    let o = run(&[
        "table", "--family", "m0", "--n", "4..9", "--q", "3,1,2", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (row, n) in rows.iter().zip(4..) {
        assert_eq!(row["n"], n);
        let qs: Vec<u64> = row["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["q"].as_u64().unwrap())
            .collect();
        assert_eq!(qs, [1, 2, 3]);
    }
}

#[test]
fn basis_examples() {
    let o = run(&[
        "basis",
        "--algebra",
        "m0",
        "--n",
        "7",
        "--q",
        "3",
        "--source",
        "paper",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "e{2,3,7} + e{2,4,6} + e{3,4,5}"));

    let o = run(&[
        "basis",
        "--algebra",
        "m0-infinite",
        "--q",
        "2",
        "--max-degree",
        "7",
        "--source",
        "paper",
    ]);
    assert_eq!(stdout(&o), "e{2,3}\ne{2,5} + e{3,4}\n");

    let o = run(&[
        "basis",
        "--algebra",
        "m0",
        "--n",
        "4",
        "--q",
        "3",
        "--source",
        "paper",
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&[
        "basis",
        "--algebra",
        "m2-infinite",
        "--q",
        "3",
        "--max-degree",
        "20",
        "--source",
        "paper",
        "--verify",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["algebra"]["max_degree"], 20);
    assert_eq!(v["payload"]["verification"]["count_matches"], true);

    assert_eq!(
        run(&[
            "basis",
            "--algebra",
            "m0",
            "--n",
            "7",
            "--q",
            "4",
            "--source",
            "paper"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn default_degree_cap_is_reported() {
    let o = run(&[
        "basis",
        "--algebra",
        "m0-infinite",
        "--q",
        "2",
        "--source",
        "paper",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["algebra"]["max_degree"], 30);
}

#[test]
fn json_forms_round_trip() {
    let o = run(&[
        "betti",
        "--algebra",
        "m2",
        "--n",
        "9",
        "--q",
        "3",
        "--reps",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let forms: Vec<Form> =
        serde_json::from_value(v["payload"]["results"][0]["representatives"].clone()).unwrap();
    assert_eq!(forms, cohomology_basis(&make_m2(9).unwrap(), 3).unwrap());
    assert_eq!(v["payload"]["results"][0]["betti"], forms.len());
}

#[test]
fn payloads_are_deterministic() {
    let args = [
        "betti",
        "--algebra",
        "m0",
        "--n",
        "11",
        "--q",
        "3",
        "--reps",
        "--format",
        "json",
    ];
    let a: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    let b: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    assert_eq!(
        serde_json::to_string(&a["payload"]).unwrap(),
        serde_json::to_string(&b["payload"]).unwrap()
    );
    let text = ["table", "--family", "m2", "--n", "5..14", "--q", "1,2,3"];
    assert_eq!(run(&text).stdout, run(&text).stdout);
}

#[test]
fn thread_count_does_not_change_results() {
    let args = [
        "table", "--family", "m0", "--n", "3..14", "--q", "3", "--format", "csv",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .env("MAXCLASS_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .env("MAXCLASS_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, four.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .env("MAXCLASS_THREADS", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_file_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.md");
    let o = run(&[
        "table",
        "--family",
        "m0",
        "--n",
        "3..5",
        "--q",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().contains("| 5 | 3 |"));
}

#[test]
fn verify_suites() {
    for suite in ["paper-table", "interweaving"] {
        let o = run(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("[PASS]")));
    }
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn check_files() {
    let m2 = algebra_file(&make_m2(8).unwrap().save());
    let o = run(&["check", m2.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid");

    let bad = algebra_file("dim 4\n1 2 : 4\n");
    let o = run(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("grading violation"));

    let empty = algebra_file("");
    let o = run(&["check", empty.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 0"));

    let broken = algebra_file("dim 4\n1 2 3\n");
    let o = run(&["check", broken.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn betti_of_a_file_algebra() {
    let f = algebra_file("# heisenberg\ndim 3\n1 2 : 3\n");
    let o = run(&["betti", "--algebra", f.path().to_str().unwrap(), "--q", "1"]);
    assert_eq!(stdout(&o).trim(), "2");
    let ungraded = algebra_file("dim 3\n1 2 : 2\n");
    let o = run(&[
        "betti",
        "--algebra",
        ungraded.path().to_str().unwrap(),
        "--q",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "betti",
        "--algebra",
        ungraded.path().to_str().unwrap(),
        "--q",
        "1",
        "--degree",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        run(&["betti", "--algebra", "m0", "--q", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["table", "--family", "m0", "--n", "9..3", "--q", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "table",
            "--family",
            "m0",
            "--n",
            "3..9",
            "--q",
            "4",
            "--check-closed-form"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
