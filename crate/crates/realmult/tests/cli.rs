//! End-to-end checks of the `realmult` binary: output contents, the JSON
//! schema, and the documented exit-code mapping.

use std::process::{Command, Output};

use realmult::report::{table_from_csv, TableRow};

fn realmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realmult"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn pell_reports_the_fundamental_unit() {
    let out = realmult(&["pell", "5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("fundamental unit: (t,u) = (1,1), norm -1"));
    assert!(text.contains("(t,u) = (3,1), norm 1"));

    let out = realmult(&["pell", "40"]);
    assert!(stdout(&out).contains("(t,u) = (6,1), norm -1"));
}

#[test]
fn pell_rejects_square_discriminants() {
    let out = realmult(&["pell", "16"]);
    assert_eq!(code(&out), 2);

    let out = realmult(&["pell", "7"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn kgroups_worked_examples() {
    let out = realmult(&["kgroups", "1", "1", "-1", "--power", "-3", "--g", "1,0;0,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("K0 matrix:  (-1,2;2,-3)"));
    assert!(text.contains("K0 = Z^2 (+) Z/2 (+) Z/2"));
    assert!(text.contains("K1 = Z^2"));
    assert!(text.contains("cross-check agrees"));

    let out = realmult(&["kgroups", "1", "4", "-1", "--power", "-1"]);
    let text = stdout(&out);
    assert!(text.contains("K0 = Z^2 (+) Z/4"));

    let out = realmult(&["kgroups", "5", "-5", "1", "--power", "-1"]);
    let text = stdout(&out);
    assert!(text.contains("K0 matrix:  (-3,-1;5,2)"));
}

#[test]
fn kgroups_json_schema() {
    let out = realmult(&[
        "kgroups", "1", "1", "-1", "--power", "-3", "--g", "1,0;0,1", "--json",
    ]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["input"]["power"], "-3");
    assert_eq!(value["pell"]["t"], "-4");
    assert_eq!(value["pell"]["u"], "2");
    assert_eq!(value["pell"]["norm"], "-1");
    assert_eq!(value["matrices"]["k0"][0][0], "-1");
    assert_eq!(value["k0"]["free_rank"], "2");
    assert_eq!(value["k0"]["torsion"][0], "2");
    assert_eq!(value["k0"]["torsion"][1], "2");
    assert_eq!(value["k1"]["torsion"].as_array().unwrap().len(), 0);
    assert_eq!(value["theorem"]["s"], "2");
    assert_eq!(value["theorem"]["cofactor"], "2");
    assert_eq!(value["theorem"]["agrees"], true);
}

#[test]
fn kgroups_invalid_inputs_exit_2() {
    // n = 0 is the trivial unit
    let out = realmult(&["kgroups", "1", "1", "-1", "--power", "0"]);
    assert_eq!(code(&out), 2);
    // non-unimodular g
    let out = realmult(&["kgroups", "1", "1", "-1", "--power", "-1", "--g", "2,0;0,1"]);
    assert_eq!(code(&out), 2);
    // malformed matrix
    let out = realmult(&["kgroups", "1", "1", "-1", "--power", "-1", "--g", "1,0;0"]);
    assert_eq!(code(&out), 2);
    // rational theta
    let out = realmult(&["kgroups", "1", "0", "-1", "--power", "-1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn morita_verdicts_and_exit_codes() {
    let out = realmult(&[
        "morita", "--first", "1,1,-1", "--n1", "-3", "--second", "1,4,-1", "--n2", "-1",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not Morita equivalent"));

    let out = realmult(&[
        "morita", "--first", "1,6,-1", "--n1", "1", "--second", "3,-4,-2", "--n2", "1",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("verdict: Morita equivalent"));
    assert!(text.contains("applies"));

    // identical specs
    let out = realmult(&[
        "morita", "--first", "1,1,-1", "--n1", "-3", "--second", "1,1,-1", "--n2", "-3",
    ]);
    assert_eq!(code(&out), 0);

    let out = realmult(&[
        "morita", "--first", "1,1,-1", "--n1", "0", "--second", "1,1,-1", "--n2", "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn morita_json_contains_both_k_groups() {
    let out = realmult(&[
        "morita", "--first", "1,1,-1", "--n1", "-3", "--second", "1,4,-1", "--n2", "-1", "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["equivalent"], false);
    assert_eq!(value["first_k0"]["torsion"][0], "2");
    assert_eq!(value["second_k0"]["torsion"][0], "4");
}

#[test]
fn examples_all_pass_and_corruption_is_detected() {
    let out = realmult(&["examples"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6);
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 0);

    let out = realmult(&["examples", "--self-test-corrupt"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn examples_json_is_machine_readable() {
    let out = realmult(&["examples", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let items = value.as_array().expect("array of checks");
    assert_eq!(items.len(), 6);
    assert!(items.iter().all(|c| c["pass"] == true));
}

#[test]
fn cf_and_equiv_commands() {
    let out = realmult(&["cf", "1", "1", "-1"]);
    let text = stdout(&out);
    assert!(text.contains("preperiod: [0]"));
    assert!(text.contains("period:    [1]"));

    let out = realmult(&["cf", "3", "-4", "-2", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["preperiod"].as_array().unwrap().len(), 0);
    assert_eq!(value["period"][2], "2");

    let out = realmult(&["equiv", "1", "1", "-1", "5", "-5", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("equivalent"));

    let out = realmult(&["equiv", "1", "6", "-1", "3", "-4", "-2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not equivalent"));
}

#[test]
fn unit_command_reports_traces() {
    let out = realmult(&["unit", "5", "--power", "-3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("(t,u) = (-4,2)"));
    assert!(text.contains("tau = 2*theta - 1"));

    let out = realmult(&["unit", "5", "--power", "0"]);
    assert!(stdout(&out).contains("trivial unit"));
}

#[test]
fn table_rows_and_bounds() {
    let out = realmult(&["table", "--dmax", "5", "--nrange", "-1..1"]);
    assert_eq!(code(&out), 0);
    let rows = table_from_csv(&stdout(&out)).expect("valid CSV");
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.d == "5"));

    let out = realmult(&["table", "--dmax", "4", "--nrange", "-1..1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn table_contains_the_z4_row_and_round_trips() {
    let out = realmult(&["table", "--dmax", "40", "--nrange", "-2..2"]);
    let text = stdout(&out);
    let rows = table_from_csv(&text).expect("valid CSV");
    let row = rows
        .iter()
        .find(|r| r.d == "20" && r.n == "-1")
        .expect("the D=20, n=-1 row");
    assert_eq!(row.torsion, "4");
    assert!(row.det_check);

    // JSON agrees with CSV row for row
    let out = realmult(&[
        "table", "--dmax", "40", "--nrange", "-2..2", "--format", "json",
    ]);
    let json_rows: Vec<TableRow> = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(rows, json_rows);
}

#[test]
fn table_writes_files() {
    let dir = std::env::temp_dir().join("realmult-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = realmult(&[
        "table",
        "--dmax",
        "13",
        "--nrange",
        "-1..1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&path).expect("file written");
    let rows = table_from_csv(&written).expect("valid CSV");
    assert_eq!(rows.len(), 8); // D in {5, 8, 12, 13}, n = -1 and 1
    std::fs::remove_file(&path).ok();

    let out = realmult(&[
        "table",
        "--dmax",
        "13",
        "--nrange",
        "-1..1",
        "--out",
        "/nonexistent-dir/realmult.csv",
    ]);
    assert_eq!(code(&out), 2);
}
