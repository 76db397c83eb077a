//! CLI-level contracts: flag validation, exit codes, output formats, and the
//! checkpoint kill-and-resume round trip.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freegrowth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_csv_matches_reference_rows() {
    let out = run(&[
        "count",
        "--kind",
        "ideal",
        "--rank",
        "2",
        "--max-index",
        "6",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,count\n1,2\n2,3\n3,6\n4,10\n5,20\n6,35\n");

    let out = run(&[
        "count",
        "--kind",
        "congruence",
        "--rank",
        "2",
        "--max-classes",
        "3",
    ]);
    assert_eq!(stdout(&out), "n,count\n1,1\n2,10\n3,40\n");

    let out = run(&[
        "count",
        "--kind",
        "subsemigroup",
        "--rank",
        "1",
        "--max-index",
        "5",
    ]);
    assert_eq!(stdout(&out), "n,count\n1,1\n2,2\n3,4\n4,7\n5,12\n");
}

#[test]
fn json_schema_has_values_and_meta() {
    let out = run(&[
        "count",
        "--kind",
        "right-ideal",
        "--rank",
        "2",
        "--max-index",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["kind"], "right-ideal");
    assert_eq!(doc["rank"], 2);
    let values = doc["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    assert_eq!(values[2]["index"], 3);
    assert_eq!(values[2]["count"].to_string(), "14");
    assert!(doc["meta"]["threads"].is_number());
    assert!(doc["meta"]["elapsed_ms"].is_number());
    assert_eq!(doc["meta"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn fit_prints_exact_forms() {
    let cases = [
        (
            vec!["fit", "--kind", "subsemigroup", "--index", "2"],
            "a_2(FS_r) = 7/2 r^2 - 3/2 r",
        ),
        (
            vec!["fit", "--kind", "ideal", "--index", "3"],
            "a_3^I(FS_r) = 1/6 r^3 + 3/2 r^2 - 2/3 r",
        ),
        (
            vec!["fit", "--kind", "congruence", "--index", "2"],
            "a_2^C(FS_r) = 4*2^r - 6",
        ),
        (
            vec!["fit", "--kind", "congruence", "--classes", "3"],
            "a_3^C(FS_r) = 113/6*3^r - 38*2^r + 45/2",
        ),
    ];
    for (args, want) in cases {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out).trim_end(), want, "{args:?}");
    }
}

#[test]
fn verify_appendix_d_reports_and_exits_zero() {
    let out = run(&["verify", "--scope", "appendix-d"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("appendix-d: 25 rows checked, 0 mismatches"));
}

#[test]
fn verify_with_zero_budget_exits_three() {
    let out = run(&["verify", "--scope", "appendix-a", "--budget", "0s"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("budget exhausted"));
}

#[test]
fn exit_codes_for_bad_flags_and_limits() {
    // Unknown flag: clap reports usage errors with exit code 2.
    let out = run(&["count", "--kind", "ideal", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2), "missing max flag");

    let out = run(&[
        "count",
        "--kind",
        "nonsense",
        "--rank",
        "2",
        "--max-index",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2), "bad kind");

    let out = run(&["verify", "--scope", "appendix-x"]);
    assert_eq!(out.status.code(), Some(2), "bad scope");

    // Resource limits exit with 3.
    let out = run(&[
        "count",
        "--kind",
        "congruence",
        "--rank",
        "2",
        "--max-classes",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3), "order-5 tables need --long");

    let out = run(&[
        "count",
        "--kind",
        "subsemigroup",
        "--rank",
        "2",
        "--max-index",
        "99",
    ]);
    assert_eq!(out.status.code(), Some(3), "depth beyond supported maximum");

    // Checkpoints only apply to the tree kinds.
    let out = run(&[
        "count",
        "--kind",
        "right-ideal",
        "--rank",
        "2",
        "--max-index",
        "3",
        "--checkpoint",
        "/tmp/nope.ckpt",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "checkpoint with closed-form kind"
    );
}

#[test]
fn checkpoint_resume_reproduces_uninterrupted_output() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("run.ckpt");
    let ck_str = ck.to_str().unwrap();

    // Uninterrupted reference run, no checkpoint.
    let fresh = run(&[
        "count",
        "--kind",
        "subsemigroup",
        "--rank",
        "2",
        "--max-index",
        "5",
    ]);
    assert!(fresh.status.success());

    // Simulated kill: stop at depth 3, then resume to depth 5.
    let first = run(&[
        "count",
        "--kind",
        "subsemigroup",
        "--rank",
        "2",
        "--max-index",
        "3",
        "--checkpoint",
        ck_str,
    ]);
    assert!(first.status.success());
    let header = std::fs::read_to_string(&ck).unwrap();
    assert!(header.starts_with("freegrowth-ckpt v1; kind=subsemigroup; r=2; depth=3\n"));
    assert!(header.ends_with("counts=2,11,62\n"));

    let resumed = run(&[
        "count",
        "--kind",
        "subsemigroup",
        "--rank",
        "2",
        "--max-index",
        "5",
        "--checkpoint",
        ck_str,
    ]);
    assert!(resumed.status.success());
    assert_eq!(resumed.stdout, fresh.stdout);

    // A mismatched resume is rejected as bad input.
    let clash = run(&[
        "count",
        "--kind",
        "ideal",
        "--rank",
        "2",
        "--max-index",
        "5",
        "--checkpoint",
        ck_str,
    ]);
    assert_eq!(clash.status.code(), Some(2));
}

#[test]
fn tables_matrix_and_stream() {
    let out = run(&["tables", "--max-order", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "k,1,2,3\n1,1,2,3\n2,,8,37\n3,,,113\n");

    let out = run(&["tables", "--max-order", "2", "--stream"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // T_{1,1}, T_{2,1}, T_{2,2}: 1 + 2 + 8 tables.
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().all(|l| l.starts_with("n=")));
    // The two monogenic order-2 tables.
    assert!(lines.contains(&"n=2;k=1;rows=21,12"));
    assert!(lines.contains(&"n=2;k=1;rows=22,22"));

    let out = run(&["tables", "--max-order", "5"]);
    assert_eq!(out.status.code(), Some(3), "order 5 needs --long");
}

#[test]
fn compare_emits_reference_csv() {
    let out = run(&["compare", "--max-index", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,a_I,central_binomial,difference");
    assert_eq!(lines[6], "6,35,35,0");
    assert_eq!(lines[7], "7,68,70,2");
}

#[test]
fn threads_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_freegrowth"))
        .env("FREEGROWTH_THREADS", "2")
        .args([
            "count",
            "--kind",
            "subsemigroup",
            "--rank",
            "2",
            "--max-index",
            "4",
            "--format",
            "json",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["threads"], 2);
}
