use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn prym5(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prym5")).args(args).current_dir(fixtures()).env_remove("PRYM5_FIXTURES").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn check(v: &serde_json::Value, tag: &str) -> Option<bool> {
    v["checks"].as_array().unwrap().iter().find(|c| c["tag"] == tag).map(|c| c["pass"].as_bool().unwrap())
}

#[test]
fn block_net_matches_golden_report() {
    let out = prym5(&["net", "--block", "--seed", "42", "--field", "11", "--json"]);
    assert_eq!(code(&out), 0);
    let golden = std::fs::read(fixtures().join("golden/net_block_seed42_f11.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn genus_two_pipeline_matches_golden_report() {
    let out = prym5(&["g2", "all", "--fixture", "g2_sextic_minus_one_f7.txt", "--json"]);
    assert_eq!(code(&out), 0);
    let golden = std::fs::read(fixtures().join("golden/g2_all_sextic_minus_one_f7.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn equal_seeds_give_identical_output() {
    for args in [["net", "--random", "--seed", "5"], ["pipeline-liaison", "--seed", "3", "--json"]] {
        let a = prym5(&args);
        let b = prym5(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn different_seeds_give_different_nets() {
    let a = prym5(&["net", "--block", "--seed", "1", "--json"]);
    let b = prym5(&["net", "--block", "--seed", "2", "--json"]);
    assert_ne!(json(&a)["data"]["discriminant"], json(&b)["data"]["discriminant"]);
}

#[test]
fn malformed_fixture_is_an_input_error() {
    let out = prym5(&["net", "--fixture", "malformed_net.txt", "--json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"], "parse");
}

#[test]
fn missing_fixture_is_an_input_error() {
    assert_eq!(code(&prym5(&["net", "--fixture", "no_such_file.txt"])), 2);
}

#[test]
fn bad_field_is_rejected() {
    assert_eq!(code(&prym5(&["net", "--block", "--field", "12"])), 2);
    assert_eq!(code(&prym5(&["net", "--random", "--field", "2"])), 2);
}

#[test]
fn singular_net_fails_verdict() {
    let out = prym5(&["pipeline-3-16", "--fixture", "net_singular_f7.txt", "--json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(check(&v, "base-locus-smooth"), Some(false));
    assert!(String::from_utf8_lossy(&out.stderr).contains("base-locus-smooth"));
}

#[test]
fn line_budget_exits_with_budget_code() {
    let out = prym5(&["p3", "census", "--budget-lines", "10", "--json"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["error"], "budget");
}

#[test]
fn fixture_directory_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_prym5"))
        .args(["net", "--fixture", "net_block_f11.txt", "--json"])
        .current_dir(std::env::temp_dir())
        .env("PRYM5_FIXTURES", fixtures())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["field"], "GF(11)");
}

#[test]
fn inadmissible_quadric_skips_downstream_stages() {
    let out = prym5(&["g2", "all", "--fixture", "g2_sextic_minus_one_f7.txt", "--quadric", "1,0,0,0", "--json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(check(&v, "quadric-admissible"), Some(false));
    assert_eq!(check(&v, "bisecant-window"), None);
    assert_eq!(check(&v, "residual-involution"), None);
}

#[test]
fn numerology_passes() {
    let out = prym5(&["p3", "numerology", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(check(&v, "segre-root-three"), Some(true));
    assert_eq!(check(&v, "castelnuovo"), Some(true));
}

#[test]
fn cone_liaison_fixture_passes() {
    let out = prym5(&["p3", "liaison", "--fixture", "cones_f7.txt", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(check(&v, "residual-degree-8"), Some(true));
    assert_eq!(check(&v, "vertices-singular"), Some(true));
}

#[test]
fn text_output_lists_checks() {
    let out = prym5(&["p3", "numerology"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[pass] segre-root-three"));
}
