//! End-to-end tests driving the compiled binary: report formats, exit
//! codes, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_growthlab")
}

fn write_config(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("GROWTHLAB_BUDGET")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn profile_csv_matches_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "profile.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1}, "set": [[0], [1]], "r": 2, "h_min": 1, "h_max": 5}"#,
    );
    let out = run(&["profile", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    let expected = "r,h,l_h,exact\n2,1,2,true\n2,2,2,true\n2,3,2,true\n2,4,2,true\n2,5,2,true\n";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn growth_csv_matches_ball_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "growth.json",
        r#"{"group": {"kind": "heisenberg3"},
            "set": [[0,0,0],[1,0,0],[-1,0,0],[0,1,0],[0,-1,0]],
            "n_max": 2}"#,
    );
    let out = run(&["growth", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,size\n0,1\n1,5\n2,17\n");
}

#[test]
fn witness_reports_escape_element() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "witness.json",
        r#"{"group": {"kind": "heisenberg3"}, "translates": [[0,0,0]], "r": 2, "h": 2}"#,
    );
    let out = run(&["witness", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["witness"], 0);
    assert_eq!(json["element"], serde_json::json!([4, 0, 0]));
}

#[test]
fn same_config_gives_byte_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "cover.json",
        r#"{"group": {"kind": "free_abelian", "rank": 2},
            "set": [[0,0],[1,0],[0,1],[2,3],[5,5],[4,1],[3,3]],
            "second_set": [[0,0],[1,0],[0,1]],
            "cover_mode": "min"}"#,
    );
    let out1 = run(&["cover", "--config", cfg.to_str().unwrap(), "--seed", "7"]);
    let out2 = run(&["cover", "--config", cfg.to_str().unwrap(), "--seed", "7"]);
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout);

    let json: serde_json::Value = serde_json::from_str(&stdout(&out1)).unwrap();
    assert_eq!(json["verified"], true);
    assert_eq!(json["exact"], true);
}

#[test]
fn ruzsa_mode_reports_a_bound() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "ruzsa.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1},
            "set": [[0],[1],[2],[3],[4],[5],[6],[7],[8],[9]],
            "second_set": [[0],[1],[2],[3],[4]],
            "cover_mode": "ruzsa"}"#,
    );
    let out = run(&["cover", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["bound"], "14/5");
    assert_eq!(json["translates"], serde_json::json!([[0], [5]]));
}

#[test]
fn semigroup_certificate_reports_q() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "semigroup.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1},
            "set": [[-1],[0],[1],[2]], "cutoff": 10}"#,
    );
    let out = run(&["semigroup", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["status"], "proven");
    assert_eq!(json["q"], 2);
}

#[test]
fn unknown_certificate_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "unknown.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1}, "set": [[1],[2]], "cutoff": 12}"#,
    );
    let out = run(&["semigroup", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["status"], "unknown(cutoff=12)");
}

#[test]
fn config_error_exit_code() {
    let out = run(&["profile"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1}, "sett": [[0]]}"#,
    );
    let out = run(&["profile", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "budget.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1}, "set": [[0],[1]], "h": 40}"#,
    );
    let out = run(&["power", "--config", cfg.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_env_variable_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "env.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1}, "set": [[0],[1]], "h": 40}"#,
    );
    let out = Command::new(bin())
        .args(["power", "--config", cfg.to_str().unwrap()])
        .env("GROWTHLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn inner_ball_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "inner.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1},
            "set": [[-1],[0],[1],[2]],
            "second_set": [[-2],[-1],[0],[1],[2]],
            "theta": "1/2", "h_min": 2, "h_max": 8, "r": 2}"#,
    );
    let out = run(&["inner-ball", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    assert_eq!(json["cover"]["verified"], true);
}

#[test]
fn fm_check_refutation_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "fm.json",
        r#"{"group": {"kind": "heisenberg3"},
            "set": [[1,0,0]],
            "generators": [[0,1,0]],
            "h": 2, "truncation": 3, "depth": 6}"#,
    );
    let out = run(&["fm-check", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["normalization"][0]["status"], "refuted");
    assert_eq!(json["power_check"], serde_json::Value::Null);
}

#[test]
fn fm_check_full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "fm_ok.json",
        r#"{"group": {"kind": "heisenberg3"},
            "set": [[1,0,0],[-1,0,0]],
            "generators": [[0,0,1]],
            "h": 2, "truncation": 3, "depth": 6, "r": 2}"#,
    );
    let out = run(&["fm-check", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["all_proven"], true);
    assert_eq!(json["power_check"]["holds"], true);
    assert_eq!(json["lift"]["verified"], true);
}

#[test]
fn push_and_lift_commands() {
    let dir = tempfile::tempdir().unwrap();
    let push_cfg = write_config(
        dir.path(),
        "push.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1},
            "set": [[0],[1]], "translates": [[0],[3]],
            "hom": {"kind": "reduce_mod", "modulus": 6},
            "r": 2, "h": 3}"#,
    );
    let out = run(&["push", "--config", push_cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["method"], "push");
    assert!(json["size"].as_u64().unwrap() <= 2);

    let lift_cfg = write_config(
        dir.path(),
        "lift.json",
        r#"{"group": {"kind": "cyclic_finite", "modulus": 6},
            "set": [[0],[1]], "translates": [[0]], "kernel": [[0],[3]],
            "hom": {"kind": "cyclic_reduce", "modulus": 6, "divisor": 3},
            "r": 2, "h": 2}"#,
    );
    let out = run(&["lift", "--config", lift_cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["method"], "lift");
    assert!(json["size"].as_u64().unwrap() <= 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "power.json",
        r#"{"group": {"kind": "free_abelian", "rank": 1}, "set": [[0],[1]], "h": 3}"#,
    );
    let out_path = dir.path().join("result.csv");
    let out = run(&[
        "power",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written, "c0\n0\n1\n2\n3\n");
}
