//! End-to-end runs of the `xhr` binary: output shapes, exit codes,
//! determinism, and the JSON round trip back into exact polynomials.

use std::process::{Command, Output};

use xhr_core::hr::hr_poly;
use xhr_core::laurent::LaurentPoly;
use xhr_core::rat::{parse_rational, rat};

fn xhr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xhr"))
        .args(args)
        .env_remove("XHR_QUAD_LEVEL")
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn poly_hr_emits_one_record_per_degree() {
    let out = xhr(&["poly", "--family", "hr", "--alpha", "1/2", "--beta", "1/3", "--n", "0..3"]);
    assert_eq!(exit_code(&out), 0);
    let records: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let arr = records.as_array().unwrap();
    assert_eq!(arr.len(), 4);
    for (i, rec) in arr.iter().enumerate() {
        assert_eq!(rec["degree"], i as i64);
        assert_eq!(rec["n"], i as i64);
    }
}

#[test]
fn poly_json_round_trips_exactly() {
    let out = xhr(&["poly", "--family", "hr", "--alpha", "2/5", "--beta", "-1/3", "--n", "0..5"]);
    assert_eq!(exit_code(&out), 0);
    let records: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    for rec in records.as_array().unwrap() {
        let n = rec["n"].as_i64().unwrap() as u32;
        let rebuilt = LaurentPoly::from_pairs(rec["coefficients"].as_array().unwrap().iter().map(
            |pair| {
                let k = pair[0].as_i64().unwrap();
                let c = parse_rational(pair[1].as_str().unwrap()).unwrap();
                (k, c)
            },
        ));
        let expect = hr_poly(n, &rat(2, 5), &rat(-1, 3)).unwrap();
        assert_eq!(rebuilt, expect, "n = {n}");
    }
}

#[test]
fn poly_exceptional_type1_skips_deleted_index() {
    let out = xhr(&[
        "poly", "--family", "exceptional", "--j0", "1", "--l0", "2", "--alpha", "1/2", "--beta",
        "1/3", "--n", "0..5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let records: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let ns: Vec<i64> = records
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["n"].as_i64().unwrap())
        .collect();
    assert_eq!(ns, vec![0, 1, 3, 4, 5]);
    let degrees: Vec<i64> = records
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, vec![1, 2, 4, 5, 6]);
}

#[test]
fn poly_exceptional_type4_includes_added_state() {
    let out = xhr(&[
        "poly", "--family", "exceptional", "--j0", "4", "--l0", "1", "--alpha", "1/2", "--beta",
        "1/3", "--n", "-2..2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let records: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let first = &records.as_array().unwrap()[0];
    assert_eq!(first["n"], -2);
    assert_eq!(first["degree"], 0);
}

#[test]
fn verify_exact_suite_exit_zero_and_zero_error() {
    let out = xhr(&["verify", "--suite", "gevp", "--alpha", "2/5", "--beta", "1/3", "--n", "0..8"]);
    assert_eq!(exit_code(&out), 0);
    let rep: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(rep["failed"], 0);
    assert_eq!(rep["worst_error"], 0.0);
    assert_eq!(rep["passed"], rep["cases"]);
}

#[test]
fn verify_exceptional_biorthogonality_within_tolerance() {
    let out = xhr(&[
        "verify", "--suite", "biorth-exceptional", "--j0", "3", "--l0", "2", "--alpha", "1/2",
        "--beta", "3/4", "--n", "0..6", "--quad-level", "9",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(rep["worst_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_failure_exits_one() {
    // an unreasonably tight tolerance forces failures without breaking parsing
    let out = xhr(&[
        "verify", "--suite", "biorth-classical", "--alpha", "1/2", "--beta", "1/3", "--n",
        "0..3", "--tolerance", "1e-30",
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn decimal_parameters_are_a_usage_error() {
    let out = xhr(&["poly", "--family", "hr", "--alpha", "0.5", "--beta", "1/3"]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("decimal"), "{err}");
}

#[test]
fn divergent_weight_names_the_condition() {
    let out = xhr(&[
        "table", "--kind", "weights", "--family", "hr", "--alpha", "-3/4", "--beta", "-3/4",
    ]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cond_conv_w"), "{err}");

    let out = xhr(&[
        "table", "--kind", "gram", "--family", "exceptional", "--j0", "2", "--l0", "2",
        "--alpha", "1/2", "--beta", "1/2",
    ]);
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cond_X1w_2"), "{err}");
}

#[test]
fn table_weights_row_count() {
    let out = xhr(&[
        "table", "--kind", "weights", "--family", "exceptional", "--j0", "3", "--l0", "2",
        "--alpha", "1/2", "--beta", "3/4", "--points", "512",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,re,im"));
    assert_eq!(lines.count(), 512);
}

#[test]
fn table_norms_skips_deleted_index() {
    let out = xhr(&[
        "table", "--kind", "norms", "--family", "exceptional", "--j0", "1", "--l0", "2",
        "--alpha", "1/2", "--beta", "1/3", "--n", "0..6",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| !r.starts_with("2,")));
}

#[test]
fn table_gram_type4_includes_added_index() {
    let out = xhr(&[
        "table", "--kind", "gram", "--family", "exceptional", "--j0", "4", "--l0", "1",
        "--alpha", "1/2", "--beta", "1/3", "--n", "0..3", "--quad-level", "7",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.lines().any(|l| l.starts_with("-2,-2,")), "{text}");
}

#[test]
fn byte_identical_output_for_identical_config() {
    let args = [
        "table", "--kind", "gram", "--family", "hr", "--alpha", "1/2", "--beta", "1/3", "--n",
        "0..3", "--quad-level", "7",
    ];
    let a = stdout_str(&xhr(&args));
    let b = stdout_str(&xhr(&args));
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn config_file_supplies_defaults_but_flags_win() {
    let dir = std::env::temp_dir().join(format!("xhr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "alpha=1/2\nbeta=1/3\nn=0..2\n").unwrap();
    let out = xhr(&["poly", "--family", "hr", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let records: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 3);

    // flag overrides the config's range
    let out = xhr(&[
        "poly", "--family", "hr", "--config", cfg.to_str().unwrap(), "--n", "0..1",
    ]);
    let records: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn quad_level_env_variable_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_xhr"))
        .args(["verify", "--suite", "moments", "--alpha", "1/2", "--beta", "1/3", "--n", "0..2"])
        .env("XHR_QUAD_LEVEL", "55")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("55"), "{err}");
}

#[test]
fn multistep_suite_via_cli() {
    let out = xhr(&[
        "verify", "--suite", "multistep", "--seeds", "1:1,1:2", "--alpha", "1/2", "--beta",
        "1/3", "--n", "0..4",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(rep["failed"], 0);
}
