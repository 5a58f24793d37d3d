//! The `sl2char3` binary: exit codes, text and JSON output, and report
//! round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use sl2char3::cli::report::VerifyReport;
use sl2char3::cli::{run, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn sl2char3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2char3"))
        .args(args)
        .env_remove("SL2_MAX_EXT_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sl2char3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(["sl2char3"]), EXIT_USAGE);
    assert_eq!(run(["sl2char3", "frobnicate"]), EXIT_USAGE);
    assert_eq!(run(["sl2char3", "decompose", "Two"]), EXIT_USAGE);
    assert_eq!(run(["sl2char3", "decompose", "Two", "Bogus"]), EXIT_USAGE);
    // T(0,0,1) is not irreducible, so it is not a valid input.
    assert_eq!(run(["sl2char3", "decompose", "Two", "T(0,0,1)"]), EXIT_USAGE);
    assert_eq!(run(["sl2char3", "decompose", "Two", "Two", "--field", "9"]), EXIT_USAGE);
    assert_eq!(run(["sl2char3", "verify", "--scope", "table:7"]), EXIT_USAGE);
    assert_eq!(run(["sl2char3", "verify", "--field", "3"]), EXIT_USAGE);
    assert_eq!(run(["sl2char3", "report", "/nonexistent/report.json"]), EXIT_USAGE);
    let o = sl2char3(&["decompose", "Two", "Bogus"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Bogus"));
}

#[test]
fn decompose_two_two() {
    let o = sl2char3(&["decompose", "Two", "Two"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    assert!(text.contains("engine:  1 ⊕ 3"), "{text}");
    assert!(text.contains("oracle:  1 ⊕ 3"), "{text}");
    assert!(text.contains("match"));
}

#[test]
fn decompose_projective_cover() {
    let o = sl2char3(&["decompose", "Two", "T(0,0,0)"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    assert!(text.contains("row:     table-2: c=0; d=0; b=0"), "{text}");
    assert!(text.contains("engine:  M1 [1 ← 2 → 1 / 1 → 2 ← 1]"), "{text}");
}

#[test]
fn decompose_lifts_and_respects_the_cap() {
    let o = sl2char3(&["decompose", "Two", "T(2,1,0)"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("extension needed: lifted to GF(3^2)"));

    let o = Command::new(env!("CARGO_BIN_EXE_sl2char3"))
        .args(["decompose", "Two", "T(2,1,0)"])
        .env("SL2_MAX_EXT_DEGREE", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_MISMATCH));
    assert!(stdout(&o).contains("extension needed beyond the cap of degree 1"));
}

#[test]
fn decompose_json_and_single_routes() {
    let o = sl2char3(&["decompose", "--json", "Tt(1)", "Tt(2)"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["case"], "table-3: b=-β");
    assert_eq!(v["engine"], v["oracle"]);

    let o = sl2char3(&["decompose", "--engine-only", "Two", "T(0,0,0)"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(!stdout(&o).contains("oracle:"));
    let o = sl2char3(&["decompose", "--oracle-only", "Two", "T(0,0,0)"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(!stdout(&o).contains("engine:"));
    assert_eq!(
        run(["sl2char3", "decompose", "--engine-only", "--oracle-only", "Two", "Two"]),
        EXIT_USAGE
    );
}

#[test]
fn literal_reading_mismatches_exit_1() {
    let o = sl2char3(&["decompose", "--paper-literal", "T(0,1,0)", "Tt(2)"]);
    assert_eq!(o.status.code(), Some(EXIT_MISMATCH));
    let text = stdout(&o);
    assert!(text.contains("reading: table4-c-for-gamma"), "{text}");
    assert!(text.contains("MISMATCH"));
    let o = sl2char3(&["decompose", "T(0,1,0)", "Tt(2)"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
}

#[test]
fn verify_one_table_and_report_round_trip() {
    let path = scratch("table3.json");
    let o = sl2char3(&["verify", "--scope", "table:3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("scope table:3"), "{text}");
    assert!(text.contains("table-3"));
    assert!(!text.contains("table-2 ("), "{text}");

    let report: VerifyReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.passed());
    assert!(report.summary.pairs > 0);
    assert_eq!(report.summary.matched, report.summary.pairs);
    assert!(report.uncovered.is_empty());

    let o = sl2char3(&["report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&o), text);
}

#[test]
fn empty_report_renders() {
    let path = scratch("empty.json");
    std::fs::write(&path, "{}").unwrap();
    let o = sl2char3(&["report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&o), "0 pairs\n");
}

#[test]
fn literal_verify_exits_0_when_misprints_explain_every_mismatch() {
    let o = sl2char3(&["verify", "--scope", "table:4", "--paper-literal"]);
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("paper-literal readings"));
    assert!(text.contains("misprint evidence:"));
    assert!(text.contains("unexplained 0"), "{text}");
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let one = scratch("jobs1.json");
    let four = scratch("jobs4.json");
    for (path, jobs) in [(&one, "1"), (&four, "4")] {
        let o = sl2char3(&[
            "verify",
            "--field",
            "2",
            "--scope",
            "sample:200",
            "--seed",
            "7",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(EXIT_OK), "{}", stdout(&o));
    }
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&four).unwrap());
}

#[test]
fn tables_dump() {
    let o = sl2char3(&["tables", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3 + 15 + 2 + 11 + 15 + 6);
    assert_eq!(rows[0]["key"], "thm-1: 1 ⊗ V");
    assert!(rows.iter().any(|r| r["reading"].is_string()));

    let o = sl2char3(&["tables"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    assert!(text.contains("table-5': T(b,c,d) ⊗ T(β,γ,δ), γ ≠ -c"));
    assert!(text.contains("read as: T(0,c,1) ⊕ T(2/c,c,1)"));
    assert_eq!(run(["sl2char3", "tables", "--emit", "yaml"]), EXIT_USAGE);
}
