use std::process::{Command, Output};

use degamma_cli::complex::{format_complex, parse_complex};
use degamma_cli::records::{BetaRecord, OutputRecord, PoleRecord};
use proptest::prelude::*;
use serde_json::Value;

fn degamma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degamma"))
        .args(args)
        .env_remove("DEGAMMA_DEFAULT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn one_record(args: &[&str]) -> OutputRecord {
    let o = degamma(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(&o).trim()).unwrap()
}

#[test]
fn eval_closed_form_at_one() {
    let r = one_record(&["eval", "--lambda", "0.5", "--s", "1"]);
    assert!((r.value_re.unwrap() - 2.0).abs() < 1e-14);
    assert_eq!(r.method, "closed-form");
    assert_eq!(r.status, "regular");
}

#[test]
fn eval_direct_integral_at_one() {
    let r = one_record(&["eval", "--lambda", "0.5", "--s", "1", "--method", "direct-integral"]);
    assert!((r.value_re.unwrap() - 2.0).abs() < 1e-10);
    assert_eq!(r.method, "direct-integral");
}

#[test]
fn eval_pole_carries_residue() {
    let r = one_record(&["eval", "--lambda", "0.5", "--s", "-1"]);
    assert_eq!(r.status, "pole");
    assert!((r.value_re.unwrap() + 1.0).abs() < 1e-14);
}

#[test]
fn eval_complex_literal_with_negative_parts() {
    let r = one_record(&["eval", "--lambda", "0.3", "--s", "-0.5-1.25i"]);
    assert_eq!((r.s_re, r.s_im), (-0.5, -1.25));
    assert!(r.value_im.unwrap() != 0.0);
}

#[test]
fn eval_precondition_violation_exits_2_with_condition() {
    let o = degamma(&["eval", "--lambda", "0.5", "--s", "2.5", "--method", "direct-integral"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("strip"), "{err}");
    assert!(o.stdout.is_empty());
    let o = degamma(&["eval", "--lambda", "0.5", "--s", "2", "--method", "hankel"]);
    assert_eq!(o.status.code(), Some(0));
    let o = degamma(&["eval", "--lambda", "0.25", "--s", "2", "--method", "hankel"]);
    assert_eq!(o.status.code(), Some(2));
    let o = degamma(&["eval", "--lambda", "1.0", "--s", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["poles", "--n-max", "2"],
        vec!["eval", "--lambda", "0.5"],
        vec!["eval", "--lambda", "0.5", "--s", "1+2j"],
        vec!["verify", "--samples", "0"],
        vec!["table", "--lambda", "0.5"],
        vec!["table", "--lambda", "0.5", "--s-re", "1:0:0.1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(degamma(&args).status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn poles_listing() {
    let o = degamma(&["poles", "--lambda", "0.5", "--n-max", "0"]);
    let rows: Vec<PoleRecord> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0].location_re, rows[0].residue_re), (0.0, Some(1.0)));
    assert_eq!(rows[1].location_re, 2.0);
    assert!((rows[1].residue_re.unwrap() + 4.0).abs() < 1e-13);

    let o = degamma(&["poles", "--lambda", "0.25", "--n-max", "2"]);
    let mut locations: Vec<f64> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<PoleRecord>(l).unwrap().location_re)
        .collect();
    locations.sort_by(f64::total_cmp);
    assert_eq!(locations, vec![-2.0, -1.0, 0.0, 4.0, 5.0, 6.0]);
}

#[test]
fn table_over_real_part() {
    let o = degamma(&["table", "--lambda", "0.3", "--s-re", "0.1:2.9:0.1"]);
    let rows: Vec<OutputRecord> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 29);
    assert!(rows.iter().all(|r| r.status == "regular"));
}

#[test]
fn table_over_lambda_csv() {
    let o = degamma(&["--format", "csv", "table", "--s", "0.5", "--lambda", "0.1:0.9:0.1"]);
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["s_re", "s_im", "lambda", "value_re", "value_im", "abs_error", "method", "status"]
    );
    let rows: Vec<OutputRecord> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.status == "regular"));
}

#[test]
fn table_crossing_a_pole_leaves_a_gap() {
    let o = degamma(&["table", "--lambda", "0.5", "--s-re", "-0.5:0.5:0.25"]);
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2]["status"], "pole");
    assert!(rows[2]["value_re"].is_null());
}

#[test]
fn table_marks_inapplicable_cells_skipped() {
    let o = degamma(&["table", "--lambda", "0.5", "--s-re", "0.5:1.5:0.5", "--method", "hankel"]);
    let rows: Vec<OutputRecord> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[1].status, "skipped");
    assert_eq!(rows[0].status, "regular");
}

#[test]
fn beta_methods() {
    for method in ["ratio", "classical-mixed"] {
        let o = degamma(&["beta", "--lambda", "0.25", "--alpha", "1", "--beta", "1", "--method", method]);
        let r: BetaRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert!((r.value_re.unwrap() - 2.0 / 3.0).abs() < 1e-14, "{method}");
        assert_eq!(r.method, method);
    }
    let o = degamma(&[
        "beta", "--lambda", "0.25", "--alpha", "0.5", "--beta", "0.5", "--method", "product", "--n-terms", "100000",
    ]);
    let r: BetaRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    let o = degamma(&["beta", "--lambda", "0.25", "--alpha", "0.5", "--beta", "0.5"]);
    let want: BetaRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    let want = want.value_re.unwrap();
    assert!((r.value_re.unwrap() - want).abs() < 1e-4 * want);
}

#[test]
fn beta_with_argument_on_pole_exits_2() {
    let o = degamma(&["beta", "--lambda", "0.5", "--alpha", "-2", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("argument a"));
}

#[test]
fn tolerance_environment_variable() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_degamma"))
            .args(["eval", "--lambda", "0.5", "--s", "0.5", "--method", "direct-integral"])
            .env("DEGAMMA_DEFAULT_TOL", tol)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-6").status.code(), Some(0));
    assert_eq!(run("1e-20").status.code(), Some(2));
    assert_eq!(run("banana").status.code(), Some(64));
}

#[test]
fn verify_fault_injection_fails_named_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = degamma(&[
        "verify",
        "--samples",
        "3",
        "--inject-fault",
        "difference_equation",
        "--report-path",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("difference_equation"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let failed: Vec<_> = report
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == false)
        .map(|r| r["check_name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failed, ["difference_equation"]);
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for p in &paths {
        let o = degamma(&["verify", "--seed", "3", "--samples", "4", "--report-path", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

proptest! {
    #[test]
    fn complex_literals_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let z = num_complex::Complex64::new(re, im);
        prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }

    #[test]
    fn json_records_round_trip(re in -50f64..50.0, im in -20f64..20.0, lambda in 0.01f64..0.99) {
        let record = OutputRecord {
            s_re: re,
            s_im: im,
            lambda,
            value_re: Some(re * lambda),
            value_im: if im > 0.0 { Some(im / lambda) } else { None },
            abs_error: Some(lambda * 1e-17),
            method: "closed-form".into(),
            status: "regular".into(),
        };
        let text = serde_json::to_string(&record).unwrap();
        prop_assert_eq!(serde_json::from_str::<OutputRecord>(&text).unwrap(), record);
    }
}
