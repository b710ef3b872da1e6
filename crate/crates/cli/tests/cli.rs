use std::path::Path;
use std::process::{Command, Output};

use qweight_core::enumerators::{qmds_unitary, shadow};
use qweight_core::exactmath::parse_rational;
use qweight_core::CodeParams;
use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/fixtures");

fn qweight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qweight")).args(args).env_remove("QWEIGHT_CATALOG").output().unwrap()
}

fn with_catalog(path: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qweight")).args(args).env("QWEIGHT_CATALOG", path).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}.stab")
}

#[test]
fn hexacode_weights() {
    let o = qweight(&["weights", "--n", "6", "--k", "0", "--D", "2", "--kind", "sl"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,0,0,0,45,0,18\n");
}

#[test]
fn explicit_dimension_matches_log_dimension() {
    let by_k = qweight(&["weights", "--n", "5", "--k", "1", "--D", "2"]);
    let by_dim = qweight(&["weights", "--n", "5", "--K", "2", "--D", "2"]);
    assert_eq!(stdout(&by_k), stdout(&by_dim));
    assert_eq!(stdout(&by_k), "4,0,0,0,60,0\n");
    let o = qweight(&["weights", "--n", "5", "--K", "3", "--D", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a power"));
}

#[test]
fn json_rationals_round_trip() {
    let o = qweight(&["weights", "--n", "6", "--k", "0", "--D", "2", "--kind", "unitary", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expect = qmds_unitary(&CodeParams::with_k(6, 0, 4, 2).unwrap()).unwrap();
    let got: Vec<_> = doc["values"].as_array().unwrap().iter().map(|v| parse_rational(v.as_str().unwrap()).unwrap()).collect();
    assert_eq!(got, expect.values());
    assert!(doc["values"].as_array().unwrap().iter().any(|v| v.as_str().unwrap().contains('/')));
    assert_eq!(doc["kind"], "unitary-primary");
}

#[test]
fn csv_quotes_fractions() {
    let o = qweight(&["weights", "--n", "4", "--k", "0", "--D", "2", "--kind", "unitary", "--format", "csv"]);
    assert_eq!(stdout(&o), "1,2,\"3/2\",2,1\n");
}

#[test]
fn shadow_of_five_qubit_code() {
    let o = qweight(&["shadow", "--n", "5", "--k", "1", "--D", "2"]);
    assert_eq!(stdout(&o), "2,0,0,60,30,36\n");
    let o = qweight(&["shadow", "--n", "4", "--k", "0", "--D", "2", "--format", "csv"]);
    assert!(stdout(&o).starts_with("\"-1/2\","));
}

#[test]
fn excluded_check_exits_one() {
    let o = qweight(&["check", "9", "3", "4", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["status"], "excluded");
    assert_eq!(doc["reason"], "shadow");
    let s = shadow(&qmds_unitary(&CodeParams::with_k(9, 3, 4, 3).unwrap()).unwrap()).unwrap();
    let (index, value) = s.first_negative().unwrap();
    assert_eq!(doc["witness"]["index"].as_u64(), Some(index as u64));
    assert_eq!(parse_rational(doc["witness"]["value"].as_str().unwrap()).as_ref(), Some(value));
}

#[test]
fn check_verdicts() {
    let o = qweight(&["check", "6", "2", "3", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "[[6,2,3]]_2: excluded (length-bound)\n");
    let o = qweight(&["check", "6", "2", "3", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[[6,2,3]]_4: not-excluded [single-error]\n");
    let o = qweight(&["check", "5", "2", "3", "2"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "[[5,2,3]]_2: excluded (singleton)\n".to_string()));
    let o = qweight(&["check", "5", "3", "2", "--K", "3"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "((5,3,3))_2: excluded (singleton)\n".to_string()));
    let o = qweight(&["check", "5", "3", "2", "--K", "2"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "[[5,1,3]]_2: not-excluded [single-error]\n".to_string()));
    let o = qweight(&["check", "5", "3", "2", "--K", "2", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "params,status,reason,witness_index,witness_value,propagated_from,citation\n\"[[5,1,3]]_2\",not-excluded,,,,,single-error\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 7] = [
        &["weights", "--n", "6", "--D", "2"],
        &["weights", "--n", "6", "--k", "0", "--D", "2", "--bogus"],
        &["family", "7", "3"],
        &["check", "9", "3", "4"],
        &["check", "9", "3", "4", "3", "1"],
        &["frobnicate"],
        &["catalog", "--D", "3"],
    ];
    for args in cases {
        let o = qweight(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn oracle_on_fixtures() {
    let o = qweight(&["oracle", &fixture("shor"), "--reduce", "9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a: Vec<&str> = doc["a"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(a, ["16", "0", "112", "0", "240", "0", "400", "0", "256"]);
    assert_eq!(doc["distance"], 1);
    assert_eq!(doc["dimension"], "4");

    let o = qweight(&["oracle", &fixture("five_qubit"), "--purify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("A = 1,0,0,0,45,0,18\n"), "{out}");
    assert!(out.contains("distance = 4, pure = true\n"), "{out}");

    let o = qweight(&["oracle", &fixture("qutrit_403"), "--format", "csv"]);
    assert!(stdout(&o).starts_with("series,values\nA,1,0,0,"));
}

#[test]
fn malformed_and_invalid_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.stab");
    std::fs::write(&bad, "p 2\nn 2\nS + XQ\n").unwrap();
    let o = qweight(&["oracle", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let invalid = dir.path().join("anti.stab");
    std::fs::write(&invalid, "p 2\nn 1\nS + X\nS + Z\n").unwrap();
    let o = qweight(&["oracle", invalid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    let o = qweight(&["oracle", dir.path().join("missing.stab").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = qweight(&["oracle", &fixture("ghz3"), "--reduce", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

fn golden(d: u32) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/table_d{d}.csv", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn tables_match_golden_files() {
    for d in [3, 4, 5] {
        let o = qweight(&["table", "--D", &d.to_string(), "--format", "csv"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden(d), "D={d}");
    }
    let o = qweight(&["table", "--D", "3", "--max", "8", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--D", "4", "--format", "json"][..],
        &["family", "28", "5", "--format", "csv"],
        &["catalog", "--D", "5", "--sum", "20"],
    ] {
        let first = qweight(args);
        let second = qweight(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), Some(0));
    }
}

#[test]
fn family_scan_output() {
    let o = qweight(&["family", "12", "3", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["upper"], "[[8,4,3]]_3");
    let members = doc["members"].as_array().unwrap();
    assert_eq!(members.len(), 6);
    assert!(members[..4].iter().all(|m| m["reason"] == "shadow"));
    assert_eq!(members[4]["citation"], "single-error");
}

#[test]
fn catalog_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    std::fs::write(&path, "{\"family\":\"mine\",\"citation\":\"my code\",\"params\":[\"6\",\"0\",\"4\"]}\n").unwrap();
    let o = with_catalog(&path, &["table", "--D", "3", "--max", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n+k,upper,lower,optimal,citation\n4,\"[[4,0,3]]_3\",,false,\n6,\"[[6,0,4]]_3\",\"[[6,0,4]]_3\",true,my code\n8,\"[[6,2,3]]_3\",,false,\n"
    );
    let o = with_catalog(&path, &["catalog"]);
    assert_eq!(stdout(&o), "family  citation\nmine    my code\n");

    std::fs::write(&path, "{\"family\":\"broken\"}\n").unwrap();
    let o = with_catalog(&path, &["table", "--D", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}
