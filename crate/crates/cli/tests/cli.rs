//! End-to-end CLI checks: exit codes, JSON output, reproducibility.

use std::io::Write;
use std::process::{Command, Output};

fn aomoto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aomoto"))
        .args(args)
        .env_remove("AOMOTO_SEED")
        .output()
        .expect("binary runs")
}

fn write_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join("aomoto-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

fn e1_path() -> String {
    write_file(
        "e1.json",
        r#"{"dim": 2, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, 1, 1]]}"#,
    )
}

#[test]
fn poset_reports_betti_numbers() {
    let out = aomoto(&["poset", &e1_path(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 3, 3]));
    assert_eq!(v["euler_characteristic"], 1);
}

#[test]
fn aomoto_dims_match_the_worked_example() {
    let out = aomoto(&[
        "aomoto",
        &e1_path(),
        "--ring",
        "F_2",
        "--lambda",
        "1,1,1",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dims"], serde_json::json!([0, 0, 1]));
}

#[test]
fn certificate_is_triangular_with_unit_determinant() {
    let out = aomoto(&[
        "certificate",
        &e1_path(),
        "--ring",
        "Z/4",
        "--lambda",
        "1,1,1",
        "--level",
        "1",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certificate"]["triangular"], true);
    assert_eq!(v["certificate"]["det_is_unit"], true);
}

#[test]
fn verify_passes_on_e1_and_fails_on_e4_mod3() {
    let out = aomoto(&["verify", "--corpus", "e1", "--json"]);
    assert!(out.status.success());

    let out = aomoto(&[
        "verify", "--corpus", "e4", "--ring", "F_3", "--lambda", "1,1,1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(1), "check failure exits 1");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand (clap).
    let out = aomoto(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // Invalid rational in the file.
    let bad = write_file("bad.json", r#"{"dim": 2, "hyperplanes": [["1/0", 0, 0]]}"#);
    let out = aomoto(&["poset", &bad]);
    assert_eq!(out.status.code(), Some(2));
    // Duplicate hyperplanes named in the error.
    let dup = write_file(
        "dup.json",
        r#"{"dim": 2, "hyperplanes": [[1, 0, 0], [-1, 0, 0]]}"#,
    );
    let out = aomoto(&["poset", &dup]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains('1') && msg.contains('2'), "{msg}");
    // Non-prime field.
    let out = aomoto(&["aomoto", &e1_path(), "--ring", "F_4", "--lambda", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing input entirely.
    let out = aomoto(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_reproducible_for_fixed_seed() {
    let run = || aomoto(&["verify", "--corpus", "e3", "--seed", "11", "--json"]).stdout;
    assert_eq!(run(), run());
}

#[test]
fn seed_env_variable_is_honored() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_aomoto"))
        .args(["strata", &e1_path(), "--json"])
        .env("AOMOTO_SEED", "12345")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(v["seed"], 12345);
    // The --seed flag wins over the environment.
    let with_flag = Command::new(env!("CARGO_BIN_EXE_aomoto"))
        .args(["strata", &e1_path(), "--seed", "777", "--json"])
        .env("AOMOTO_SEED", "12345")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&with_flag.stdout).unwrap();
    assert_eq!(v["seed"], 777);
}

#[test]
fn local_system_command_reports_q_values() {
    let out = aomoto(&["local", &e1_path(), "--q-sqrt", "2,3,5", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dims"], serde_json::json!([0, 0, 1]));
    assert_eq!(v["q_infinity_sqrt"], "1/30");
}

#[test]
fn file_embedded_weights_are_used() {
    let path = write_file(
        "weighted.json",
        r#"{"dim": 2, "hyperplanes": [[1, 0, 0], [0, 1, 0], [1, 1, 1]],
            "ring": "Z", "lambda": ["1", "1", "-3"], "seed": 99}"#,
    );
    let out = aomoto(&["aomoto", &path, "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ring"], "Z");
    assert_eq!(v["dims"], serde_json::json!([0, 0, 1]));
}
