//! End-to-end tests of the command-line interface: output formats,
//! exit codes, and the append-only results file of the sweep.

use std::path::PathBuf;
use std::process::{Command, Output};

fn rrcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrcf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_r_at_4_matches_the_first_letter_value() {
    let out = rrcf(&["eval", "R", "4/1", "--digits", "200"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // R(e^-2pi) = 0.28407904384...
    assert!(text.contains("2.84079043840412296028"), "{text}");
}

#[test]
fn eval_lambda_star_at_1_is_inverse_sqrt_2() {
    let out = rrcf(&["eval", "lambda-star", "1/1", "--digits", "80"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("7.0710678118654752440"), "{}", stdout(&out));
}

#[test]
fn eval_small_g_130_matches_closed_form() {
    // g_130 = ((sqrt5+1)/2)^(3/2) ((sqrt13+3)/2)^(1/2) = 3.74042539...
    let out = rrcf(&["eval", "g", "130/1", "--digits", "80"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("3.740425392"), "{}", stdout(&out));
}

#[test]
fn eval_json_round_trips_byte_identically() {
    let out = rrcf(&["eval", "R", "4/1", "--digits", "100", "--json"]);
    assert!(out.status.success());
    let line = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["fn"], "R");
    assert_eq!(v["arg"], "4");
    assert_eq!(v["digits"], 100);
    // parse -> reserialize is byte-identical modulo key order
    let once = serde_json::to_string(&v).unwrap();
    let again: serde_json::Value = serde_json::from_str(&once).unwrap();
    assert_eq!(v, again);
    assert_eq!(once, serde_json::to_string(&again).unwrap());
}

#[test]
fn usage_errors_exit_3() {
    let out = rrcf(&["eval", "R", "not-a-fraction"]);
    assert_eq!(out.status.code(), Some(3));
    let out = rrcf(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn domain_errors_exit_4() {
    let out = rrcf(&["eval", "R", "0/1"]);
    assert_eq!(out.status.code(), Some(3), "0/1 is rejected at parse time");
    // digits below the floor is usage
    let out = rrcf(&["eval", "R", "4/1", "--digits", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn recognize_literal_one_is_x_minus_one() {
    let out = rrcf(&["recognize", "--literal", "1.0", "--degree", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x - 1"), "{text}");
    assert!(text.contains("recognized"), "{text}");
}

#[test]
fn recognize_unrecognizable_reports_none_with_exit_0() {
    // 50 digits of pi: no algebraic relation of degree <= 3 within height
    let out = rrcf(&[
        "recognize",
        "--literal",
        "3.14159265358979323846264338327950288419716939937510",
        "--degree",
        "3",
    ]);
    assert!(out.status.success(), "absence is a result");
    assert!(stdout(&out).contains("verdict: none"), "{}", stdout(&out));
}

#[test]
fn recognize_eval_lambda_star_26_5_finds_degree_8_polynomial() {
    let out = rrcf(&[
        "recognize", "--eval", "lambda-star", "26/5", "--degree", "8", "--digits", "600", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "recognized");
    let coeffs = v["candidate"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 9);
    assert_eq!(coeffs[7], "14999688");
    assert_eq!(v["candidate"]["root_index"], 6);
}

#[test]
fn verify_identities_certify_and_exit_0() {
    let out = rrcf(&[
        "verify", "identities", "--samples", "2", "--digits", "80", "--seed", "9", "--json",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], "certified", "{line}");
        // certificate schema keys
        for key in [
            "claim_id",
            "digits_lo",
            "digits_hi",
            "residual_lo",
            "residual_hi",
            "verdict",
            "artifacts",
            "wall_time_ms",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn reproduce_conjecture_is_numerically_supported() {
    let out = rrcf(&["reproduce", "conj_16_15", "--digits", "100"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("numerically-supported"), "{}", stdout(&out));
}

#[test]
fn search_appends_and_resumes() {
    let dir = std::env::temp_dir().join(format!("rrcf-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("sweep.jsonl");
    let path_str = path.to_str().unwrap();

    let out = rrcf(&[
        "search", "--nums", "26..26", "--dens", "5", "--digits", "320", "--out", path_str,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(first.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(first.lines().next().unwrap()).unwrap();
    assert_eq!(v["n"], 26);
    assert_eq!(v["d"], 5);
    assert_eq!(v["recognized"], true);
    assert_eq!(
        v["form"]["a_field"]["coeffs"][0], "208818",
        "Theorem-2 a-value expected: {v}"
    );

    // resumable: the same sweep adds nothing
    let out = rrcf(&[
        "search", "--nums", "26..26", "--dens", "5", "--digits", "320", "--out", path_str,
    ]);
    assert!(out.status.success());
    let second = std::fs::read_to_string(&path).unwrap();
    assert_eq!(second, first, "append-only file must be unchanged");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn catalog_dumps_versioned_json() {
    let out = rrcf(&["catalog"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["version"], 1);
    let names: Vec<&str> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for needed in ["g_130", "g_190", "G_15", "G_60", "G_240", "R_4", "R_64"] {
        assert!(names.contains(&needed), "missing {needed}");
    }
}
