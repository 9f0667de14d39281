use std::process::{Command, Output};

use serde_json::Value;

fn kproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kproj")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn hom_between_coordinates() {
    let out = kproj(&["hom", "X:0:0:1", "X:0:0:3", "-a", "2,3,1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "kproj.hom/v1");
    assert_eq!(v["report"]["hom_dim"], 1);
}

#[test]
fn hom_between_words() {
    let out = kproj(&["hom", "[e0]", "[e0]@1", "-a", "1,1,0"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["report"]["hom_dim"], 0);
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [
        &["hom", "zz(", "X:0:0:1"][..],
        &["hom", "X:0:0:1", "X:9:0:1"],
        &["hom", "X:0:0:1", "X:0:0:2", "-a", "3,1,0"],
        &["hom", "X:0:0:1"],
        &["spectrum", "strata", "--field", "prime:4"],
        &["verify", "all", "--criteria", "12"],
    ] {
        let out = kproj(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn dot_output_is_stable() {
    let args = ["ar", "window", "--dot", "--bound", "1", "-a", "1,1,0", "--hammock", "X:0:0:0"];
    let first = kproj(&args);
    assert_eq!(first.stdout, kproj(&args).stdout);
    assert_eq!(String::from_utf8(first.stdout).unwrap(), include_str!("golden/ar_110_bound1_hammock.dot"));
    let plain = kproj(&["ar", "window", "--dot", "--bound", "1", "-a", "2,3,1"]);
    assert_eq!(String::from_utf8(plain.stdout).unwrap(), include_str!("golden/ar_231_bound1.dot"));
}

#[test]
fn window_json_lists_nodes() {
    let out = kproj(&["ar", "window", "--json", "--bound", "1", "-a", "1,1,0"]);
    assert!(out.status.success());
    assert!(json(&out)["nodes"].as_array().is_some_and(|n| !n.is_empty()));
}

#[test]
fn hammock_members() {
    let out = kproj(&["hammock", "X:0:0:0", "--window", "1", "-a", "1,1,0"]);
    let v = json(&out);
    let members: Vec<&str> = v["members"].as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect();
    assert_eq!(members, ["X:0:-1:0", "X:0:0:0", "X:0:0:1", "X:0:0:inf", "Z:0:0"]);
}

#[test]
fn strata_and_open_sets() {
    let v = json(&kproj(&["spectrum", "strata", "--bound", "1", "-a", "1,1,0"]));
    let ranks: Vec<u64> = v["points"].as_array().unwrap().iter().map(|p| p["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks.iter().filter(|&&r| r == 2).count(), 1);
    let v = json(&kproj(&["spectrum", "open-set", "X:0:0:0", "--targets", "X:0:0:1", "--bound", "2", "-a", "2,3,1"]));
    assert_eq!(v["candidates"][0], serde_json::json!(["X:0:0:0"]));
}

#[test]
fn verify_reports_cb_rank_two() {
    let out = kproj(&["verify", "all", "-a", "1,1,0", "--criteria", "8", "--bound", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("CB = 2"));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn failed_checks_exit_with_one() {
    let out = kproj(&["verify", "all", "-a", "1,1,0", "--criteria", "6", "--bound", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert!(v["criteria"][0]["failure_count"].as_u64().unwrap() > 0);
}

#[test]
fn algebra_info() {
    let v = json(&kproj(&["algebra", "info", "-a", "2,3,1"]));
    assert_eq!(v["gldim"], "Finite");
    assert_eq!(v["presentation"]["relations"].as_array().unwrap().len(), 2);
}
