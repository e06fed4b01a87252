use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropmoduli")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_of_three_point_triangle() {
    let o = run(&["dim", "1,0 0,3 3,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "dimension: 3"));
}

#[test]
fn dim_json_round_trips() {
    let o = run(&["dim", "0,0 4,0 0,4", "--method", "auto", "--json"]);
    assert!(o.status.success());
    let r: tropmoduli::io::ModuliReportJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.dimension, r.oracle), (6, Some(6)));
    let w = r.witness.unwrap().to_triangulation().unwrap();
    assert_eq!(tropmoduli::tropical::moduli_dim_oracle(&w).unwrap(), 6);
}

#[test]
fn verify_range_json() {
    let o = run(&["verify-range", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["achieved"], serde_json::json!([3, 4, 5, 6]));
}

#[test]
fn hyperelliptic_table_row() {
    let o = run(&["hyperelliptic-table", "3"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("Class 2(a) i=2 j=1 dim=5")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dim", "0,0 1,1"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "0,0 x"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));
    let o = run(&["triangulations", "0,0 4,0 0,4", "--count", "--max-points", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn triangulation_file_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("list.jsonl");
    let o = run(&["triangulations", "1,0 0,3 3,1 3,2", "--list", "--regular-only", "--json", "--out", list.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let text = std::fs::read_to_string(&list).unwrap();
    let first = text.lines().next().unwrap();
    assert!(text.lines().count() > 1);
    let file = dir.path().join("t.json");
    std::fs::write(&file, first).unwrap();
    let o = run(&["dim-triangulation", file.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["formula"], v["oracle"]);
}

#[test]
fn polygon_file_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    std::fs::write(&file, r#"{"vertices": [[0,0],[2,0],[0,2]]}"#).unwrap();
    let o = run(&["triangulations", file.to_str().unwrap(), "--count"]);
    assert_eq!(stdout(&o), "count: 4\n");
    let o = run(&["genus", file.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["genus"].as_u64(), v["lattice_points"].as_u64()), (Some(0), Some(6)));
}

#[test]
fn classify_hyperelliptic() {
    let o = run(&["classify", "0,0 2,0 4,1 2,2 1,2"]);
    let s = stdout(&o);
    assert!(s.contains("hyperelliptic: true") && s.contains("class: Class 2(a) i=2 j=1"), "{s}");
}

#[test]
fn atlas_lines_parse() {
    let o = run(&["atlas", "2", "3"]);
    let records: Vec<tropmoduli::io::AtlasJson> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let g3: Vec<usize> = records.iter().filter(|r| r.genus == 3).map(|r| r.dimension).collect();
    assert!((3..=6).all(|d| g3.contains(&d)));
    assert!(records.iter().any(|r| r.genus == 2 && r.dimension == 3));
}

#[test]
fn constraints_of_rectangle() {
    let o = run(&["constraints", "0,0 4,0 4,2 0,2", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["labels"].as_array().unwrap().len() >= 3);
    assert!(v["dimension"].as_u64().unwrap() >= 3);
}
