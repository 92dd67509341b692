use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ydlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ydlift")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ydlift-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn verify_hopf_h() {
    let out = ydlift(&["verify", "hopf", "H"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_yd_module() {
    let out = ydlift(&["verify", "yd", "M1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ydlift(&["verify", "yd", "Omega_2", "--n", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lift_dim_u1_all_ones() {
    let out = ydlift(&["lift", "dim", "U1", "--n", "1,1,1,1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["checks"][0]["value"], 4096);
}

#[test]
fn lift_dim_with_params_file() {
    let d = scratch_dir("params");
    let ps = d.join("I.json");
    std::fs::write(&ps, r#"{"lambda": "1", "mu": "x", "alpha": "1/2"}"#).unwrap();
    let out = ydlift(&["lift", "dim", "U14", "--params", ps.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["checks"][0]["value"], 256);
    let out = ydlift(&["lift", "hopf-check", "U14", "--params", ps.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn presentation_file_subject() {
    let d = scratch_dir("dsl");
    let f = d.join("ext.txt");
    std::fs::write(&f, "name: ext\ngens: | t\nrel: t*t = 0\n").unwrap();
    let out = ydlift(&["lift", "dim", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["checks"][0]["value"], 2);
}

#[test]
fn confluence_reports_rules() {
    let out = ydlift(&["lift", "confluence", "U45"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn iso_check_u45() {
    let d = scratch_dir("iso");
    let (i, ip, w) = (d.join("I.json"), d.join("Ip.json"), d.join("w.json"));
    std::fs::write(&i, r#"{"lambda": "4", "mu": "9"}"#).unwrap();
    std::fs::write(&ip, r#"{"lambda": "1", "mu": "1"}"#).unwrap();
    std::fs::write(&w, r#"{"tau": 1, "z": "2", "beta": "3"}"#).unwrap();
    let args = |w: &PathBuf| {
        ydlift(&["iso", "check", "U45", "--I", i.to_str().unwrap(), "--Iprime", ip.to_str().unwrap(), "--witness", w.to_str().unwrap()])
    };
    assert_eq!(args(&w).status.code(), Some(0));
    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"tau": 1, "z": "1", "beta": "1"}"#).unwrap();
    assert_eq!(args(&bad).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = ydlift(&["bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["error"]["kind"], "usage");
    let out = ydlift(&["lift", "dim", "U14", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ydlift(&["verify", "yd", "Q7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_errors_exit_3() {
    let out = ydlift(&["lift", "dim", "U14", "--word-bound", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["error"]["kind"], "resource");
}

#[test]
fn failed_check_exits_1() {
    let out = ydlift(&["nichols", "dims", "trivial", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["checks"][0]["passed"], false);
    assert!(r["checks"][0]["witness"].is_string());
}

#[test]
fn nichols_dims_of_m1() {
    let out = ydlift(&["nichols", "dims", "M1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["checks"][0]["value"]["dims"], serde_json::json!([1, 2, 1, 0]));
    assert_eq!(r["checks"][0]["value"]["total"], 4);
}

#[test]
fn reports_are_reproducible() {
    for args in [&["verify", "aut"][..], &["lift", "dim", "U14"], &["catalog", "list"]] {
        let a = ydlift(args);
        let b = ydlift(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(report(&a)["schema"], 1);
    }
}

#[test]
fn catalog_list() {
    let r = report(&ydlift(&["catalog", "list"]));
    let entries = r["checks"][0]["value"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["name"] == "tau17"));
    assert!(entries.iter().any(|e| e["name"] == "Omega_49"));
}

#[test]
fn wall_time_is_opt_in() {
    let r = report(&ydlift(&["verify", "hopf", "H"]));
    assert!(r.get("wall_time").is_none());
    let r = report(&ydlift(&["--wall-time", "verify", "hopf", "H"]));
    assert!(r["wall_time"].is_string());
}
