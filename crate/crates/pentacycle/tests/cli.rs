//! End-to-end checks of the binary: exit codes, JSON determinism, and the
//! fixture-override error path.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pentacycle"))
}

#[test]
fn genus_subcommand_succeeds() {
    let out = bin().args(["genus", "--max", "10"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("genus"));
}

#[test]
fn json_output_is_deterministic() {
    let run = || {
        let out = bin().args(["genus", "--json"]).output().unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn unknown_stage_is_a_usage_error() {
    let out = bin().args(["all", "--only", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_elements_fixture_fails_descent_with_exit_1() {
    let dir = std::env::temp_dir().join("pentacycle_cli_bad_fixture");
    std::fs::create_dir_all(&dir).unwrap();
    // corrupt one claimed norm
    let good = include_str!("../tables/elements_of_L.json");
    let bad = good.replace("\"norm\": \"8\"", "\"norm\": \"9\"");
    assert_ne!(good, bad);
    std::fs::write(dir.join("elements_of_L.json"), bad).unwrap();
    let out = bin()
        .args(["descent"])
        .env("PENTACYCLE_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_file(dir.join("elements_of_L.json"));
}

#[test]
fn corrupted_tau5_fixture_fails_model_with_exit_1() {
    let dir = std::env::temp_dir().join("pentacycle_cli_bad_tau5");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = serde_json::json!({
        "terms": [
            [0,0,"33"],[0,1,"28"],[0,2,"40"],[0,3,"9"],
            [1,0,"36"],[1,1,"-24"],[1,2,"17"],
            [2,0,"44"],[2,1,"19"],[2,2,"19"],
            [3,0,"11"],[3,1,"18"],[4,0,"3"],[4,1,"11"],
            [5,0,"1"],[6,0,"1"]
        ]
    });
    std::fs::write(dir.join("tau5.json"), bad.to_string()).unwrap();
    let out = bin()
        .args(["model"])
        .env("PENTACYCLE_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_file(dir.join("tau5.json"));
}

#[test]
fn only_descent_produces_the_rank_subtree() {
    let out = bin()
        .args(["all", "--only", "descent", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let children = v["children"].as_array().unwrap();
    let rank = children.iter().find(|c| c["name"] == "rank").unwrap();
    assert_eq!(rank["payload"]["rank"], 1);
}
