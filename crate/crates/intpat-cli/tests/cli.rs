//! End-to-end tests driving the compiled `intpat` binary.
//!
//! Counts asserted here (18 closed patterns, 44 generators on the running
//! example at minimal support 1) were derived from the brute-force
//! enumeration; the library test suite checks the same numbers against
//! the oracle.

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::{Command, Output};

fn testdata(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../testdata")
        .join(name)
}

fn intpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intpat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn table1() -> String {
    testdata("table1.csv").display().to_string()
}

fn stdout_lines(output: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|line| serde_json::from_str(line).expect("valid JSONL"))
        .collect()
}

#[test]
fn mine_closed_emits_one_record_per_pattern() {
    let out = intpat(&["mine", &table1(), "--min-support", "1"]);
    assert!(out.status.success());
    let records = stdout_lines(&out);
    assert_eq!(records.len(), 18);
    for record in &records {
        let support = record["support"].as_u64().unwrap();
        assert_eq!(record["extent"].as_array().unwrap().len() as u64, support);
        assert_eq!(record["pattern"].as_array().unwrap().len(), 3);
        assert!(record.get("closure").is_none());
    }
    // The run report arrives as one JSON line on stderr and its count
    // matches the emitted records.
    let report: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(report["patterns"].as_u64().unwrap(), 18);
    assert_eq!(report["mode"], "closed");
    assert_eq!(report["objects"], 5);
    assert_eq!(report["range_sizes"], serde_json::json!([3, 3, 4]));
}

#[test]
fn mine_generators_on_the_projection_includes_the_documented_pair() {
    let input = testdata("table1_m1m3.csv").display().to_string();
    for store in ["trie", "hash"] {
        let out = intpat(&[
            "mine",
            &input,
            "--min-support",
            "60%",
            "--mode",
            "generators",
            "--store",
            store,
        ]);
        assert!(out.status.success());
        let patterns: HashSet<String> = stdout_lines(&out)
            .iter()
            .map(|r| r["pattern"].to_string())
            .collect();
        assert!(patterns.contains("[[4,6],[5,8]]"), "store {store}");
        assert!(patterns.contains("[[4,5],[4,8]]"), "store {store}");
    }
}

#[test]
fn generator_records_carry_their_class_closure() {
    let out = intpat(&[
        "mine",
        &table1(),
        "--min-support",
        "1",
        "--mode",
        "generators",
    ]);
    assert!(out.status.success());
    let records = stdout_lines(&out);
    assert_eq!(records.len(), 44);
    assert!(records.iter().all(|r| r.get("closure").is_some()));
}

#[test]
fn zero_and_oversized_supports_are_usage_errors() {
    for bad in ["0", "6", "0%", "200%", "abc"] {
        let out = intpat(&["mine", &table1(), "--min-support", bad]);
        assert_eq!(out.status.code(), Some(2), "--min-support {bad}");
    }
}

#[test]
fn percentage_support_rounds_up() {
    // 41% of 5 objects is 2.05, which must round up to 3.
    let out = intpat(&["mine", &table1(), "--min-support", "41%"]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(report["min_support"].as_u64().unwrap(), 3);
}

#[test]
fn malformed_data_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "m1,m2\n1,abc\n").unwrap();
    let out = intpat(&["mine", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m2"));

    let missing = intpat(&["mine", "/nonexistent/data.csv"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn scale_reproduces_the_golden_context() {
    let out = intpat(&["scale", &table1()]);
    assert!(out.status.success());
    let golden = std::fs::read_to_string(testdata("table2_context.csv")).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), golden);
}

#[test]
fn scale_json_describes_the_context() {
    let out = intpat(&["scale", &table1(), "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(value["items"].as_array().unwrap().len(), 20);
    assert_eq!(value["objects"].as_array().unwrap().len(), 5);
    assert_eq!(value["incidence"][0][1], 1);
    assert_eq!(value["incidence"][0][0], 0);
}

#[test]
fn scale_rejects_a_table_without_attributes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ids-only.csv");
    std::fs::write(&path, "id\ng1\n").unwrap();
    let out = intpat(&["scale", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_closed_set_matches_the_miner() {
    let mined = intpat(&["mine", &table1(), "--min-support", "2", "--sort"]);
    let oracle = intpat(&[
        "oracle",
        &table1(),
        "--emit",
        "closed",
        "--min-support",
        "2",
        "--sort",
    ]);
    assert!(mined.status.success() && oracle.status.success());
    assert_eq!(
        String::from_utf8_lossy(&mined.stdout),
        String::from_utf8_lossy(&oracle.stdout)
    );
}

#[test]
fn oracle_generators_match_the_miner_as_sets() {
    let mined = intpat(&[
        "mine",
        &table1(),
        "--mode",
        "generators",
        "--min-support",
        "1",
    ]);
    let oracle = intpat(&[
        "oracle",
        &table1(),
        "--emit",
        "generators",
        "--min-support",
        "1",
    ]);
    assert!(mined.status.success() && oracle.status.success());
    let mined: HashSet<String> = stdout_lines(&mined).iter().map(|r| r.to_string()).collect();
    let oracle: HashSet<String> = stdout_lines(&oracle)
        .iter()
        .map(|r| r.to_string())
        .collect();
    assert_eq!(mined, oracle);
}

#[test]
fn oracle_classes_include_the_documented_class() {
    let input = testdata("table1_m1m3.csv").display().to_string();
    let out = intpat(&["oracle", &input, "--emit", "classes"]);
    assert!(out.status.success());
    let class = stdout_lines(&out)
        .into_iter()
        .find(|r| r["extent"] == serde_json::json!(["g1", "g3", "g4", "g5"]))
        .expect("class present");
    assert_eq!(class["closed"].to_string(), "[[4,5],[5,8]]");
    assert_eq!(class["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn oracle_cap_env_variable_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_intpat"))
        .args(["oracle", &table1(), "--emit", "closed"])
        .env("INTPAT_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    // The explicit flag overrides the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_intpat"))
        .args(["oracle", &table1(), "--emit", "closed", "--cap", "360"])
        .env("INTPAT_ORACLE_CAP", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn sorted_runs_are_byte_identical() {
    let a = intpat(&["mine", &table1(), "--sort"]);
    let b = intpat(&["mine", &table1(), "--sort"]);
    assert_eq!(a.stdout, b.stdout);

    let p = intpat(&["mine", &table1(), "--sort", "--parallel"]);
    assert_eq!(a.stdout, p.stdout);
}

#[test]
fn parallel_flag_is_rejected_for_generators() {
    let out = intpat(&["mine", &table1(), "--mode", "generators", "--parallel"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_writes_counts_for_every_combination() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = intpat(&[
        "bench",
        &table1(),
        "--min-supports",
        "60%,1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let table = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(table.contains("closed"));
    assert!(table.contains("generators"));

    let written = std::fs::read_to_string(&csv).unwrap();
    let mut lines = written.lines();
    assert_eq!(
        lines.next().unwrap(),
        "min_support_raw,min_support,mode,store,patterns,elapsed_ms"
    );
    // 2 supports x (closed + generators x 2 stores) = 6 rows.
    assert_eq!(lines.count(), 6);
    assert!(written.contains("1,1,closed,-,18,"));
    assert!(written.contains("1,1,generators,trie,44,"));
    assert!(written.contains("1,1,generators,hash,44,"));
}

#[test]
fn stats_reports_search_space_and_ratios() {
    let out = intpat(&["stats", &table1(), "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(value["search_space"], "360");
    assert_eq!(value["closed"], 18);
    assert_eq!(value["generators"], 44);
    let ratio = value["closed_ratio"].as_f64().unwrap();
    assert!((ratio - 18.0 / 360.0).abs() < 1e-12);

    let single = tempfile::tempdir().unwrap();
    let path = single.path().join("one.csv");
    std::fs::write(&path, "m1\n7\n").unwrap();
    let out = intpat(&["stats", path.to_str().unwrap(), "--json"]);
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(value["search_space"], "1");
    assert_eq!(value["closed_ratio"].as_f64().unwrap(), 1.0);
    assert_eq!(value["generator_ratio"].as_f64().unwrap(), 1.0);
}

#[test]
fn output_and_report_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("patterns.jsonl");
    let report = dir.path().join("report.json");
    let out = intpat(&[
        "mine",
        &table1(),
        "--output",
        output.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(out.stderr.is_empty());

    let lines = std::fs::read_to_string(&output).unwrap();
    let report: serde_json::Value =
        serde_json::from_str(std::fs::read_to_string(&report).unwrap().trim()).unwrap();
    assert_eq!(
        lines.lines().count() as u64,
        report["patterns"].as_u64().unwrap()
    );
}
