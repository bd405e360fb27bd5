mod support;

use std::fs;

use serde_json::Value;
use support::{fixtures, lp_lab, EXAMPLES};

fn example(name: &str) -> std::process::Output {
    let ex = EXAMPLES
        .iter()
        .find(|e| e.name == name)
        .expect("unknown example");
    let out = lp_lab(ex.args);
    assert_eq!(
        out.status.code(),
        Some(ex.exit),
        "{name}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout(name: &str) -> String {
    String::from_utf8(example(name).stdout).unwrap()
}

fn report(name: &str) -> Value {
    serde_json::from_str(&stdout(name)).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn column(doc: &Value, key: &str) -> Vec<f64> {
    doc["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[key].as_f64().unwrap())
        .collect()
}

#[test]
fn synth_examples() {
    assert_eq!(stdout("synth constant"), "7\n7\n7\n");
    assert_eq!(stdout("synth recurrence"), "0\n1\n2\n3\n");
    assert_eq!(stdout("synth quarter turn"), "1\n0\n-1\n0\n");
}

#[test]
fn fit_cosine_finds_the_eighth_turn() {
    let doc = report("fit cosine");
    let bases = doc["bases"].as_array().unwrap();
    assert_eq!(bases.len(), 1);
    assert!((bases[0]["rho"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((bases[0]["theta"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    assert_eq!(bases[0]["power"], 0);
    assert!(doc["mse"].as_f64().unwrap() < 1e-20);
}

#[test]
fn fit_constant_and_short() {
    let doc = report("fit constant");
    let a = floats(&doc["coefficients"]);
    assert_eq!(a.len(), 1);
    assert!((a[0] - 1.0).abs() < 1e-12);
    let err = String::from_utf8(example("fit short").stderr).unwrap();
    assert!(err.contains("insufficient data"), "{err}");
}

#[test]
fn construct_examples() {
    let doc = report("construct dct constant");
    assert_eq!(floats(&doc["coefficients"]), [1.0]);
    assert_eq!(doc["mse"].as_f64(), Some(0.0));
    assert_eq!(doc["bound"].as_f64(), Some(0.0));

    let doc = report("construct diff square");
    assert_eq!(floats(&doc["coefficients"]), [3.0, -3.0, 1.0]);
    assert_eq!(doc["mse"].as_f64(), Some(0.0));

    let doc = report("construct dct pair");
    assert!((doc["mse"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((doc["bound"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn experiment_examples() {
    let mse = column(&report("experiment refine sin"), "mse");
    assert_eq!(mse.len(), 3);
    assert!(mse.windows(2).all(|w| w[1] < w[0]), "{mse:?}");

    let doc = report("experiment order-sweep cubic");
    assert_eq!(column(&doc, "p"), [2.0, 3.0, 4.0, 5.0]);
    let mse = column(&doc, "mse");
    assert!(mse[0] > 0.0 && mse[1] > 0.0);
    assert_eq!(&mse[2..], [0.0, 0.0]);

    // sample positions are rounded, so the second difference is only ~1e-17
    let mse = column(&report("experiment refine linear"), "mse");
    assert_eq!(mse.len(), 2);
    assert!(mse.iter().all(|&m| m < 1e-28), "{mse:?}");
}

#[test]
fn every_report_matches_the_schema() {
    let schema: Value = serde_json::from_str(
        &fs::read_to_string(fixtures().join("../schema/report.schema.json")).unwrap(),
    )
    .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut checked = 0;
    for ex in EXAMPLES
        .iter()
        .filter(|e| e.args[0] != "synth" && e.exit == 0)
    {
        let doc: Value = serde_json::from_slice(&lp_lab(ex.args).stdout).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", ex.name);
        checked += 1;
    }
    assert_eq!(checked, 8);
    let bad = serde_json::json!({"schema_version": "2", "command": "fit", "inputs": {}});
    assert!(!validator.is_valid(&bad));
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let json = dir.path().join("out.json");
    let out = lp_lab(&[
        "synth",
        "--input",
        "counting.spec",
        "--count",
        "4",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&csv).unwrap(), "0\n1\n2\n3\n");
    let out = lp_lab(&[
        "fit",
        "--input",
        csv.to_str().unwrap(),
        "-p",
        "2",
        "--output",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let a = floats(&doc["coefficients"]);
    assert!(
        (a[0] - 2.0).abs() < 1e-9 && (a[1] + 1.0).abs() < 1e-9,
        "{a:?}"
    );
}

#[test]
fn data_errors_exit_2_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad_csv = dir.path().join("bad.csv");
    fs::write(&bad_csv, "1\n2\nthree\n").unwrap();
    let out = lp_lab(&["fit", "--input", bad_csv.to_str().unwrap(), "-p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let bad_spec = dir.path().join("bad.spec");
    fs::write(&bad_spec, "# zero root\nbases = (0, 0, 0)\nweights = (1)\n").unwrap();
    let out = lp_lab(&[
        "synth",
        "--input",
        bad_spec.to_str().unwrap(),
        "--count",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let conf = dir.path().join("tan.conf");
    fs::write(&conf, "function = tan\ninterval = 0, 1\np = 2\nn = 8\n").unwrap();
    let out = lp_lab(&["experiment", "refine", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown function `tan`"));

    let out = lp_lab(&["fit", "--input", "missing.csv", "-p", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("grow.spec");
    fs::write(&spec, "a = 1e300\ninitial = 1e300\n").unwrap();
    let out = lp_lab(&["synth", "--input", spec.to_str().unwrap(), "--count", "3"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn bound_violation_exits_4() {
    // the DCT-1 bound omits cross terms; [4, 0, 0] with one basis gives mse 8/3 > 2
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("spike.csv");
    fs::write(&csv, "4\n0\n0\n").unwrap();
    let out = lp_lab(&[
        "construct",
        "--input",
        csv.to_str().unwrap(),
        "--method",
        "dct",
        "-p",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
}

#[test]
fn help_on_each_subcommand() {
    for cmd in ["synth", "fit", "construct", "experiment"] {
        let out = lp_lab(&[cmd, "--help"]);
        assert!(out.status.success(), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage: lp-lab"));
    }
}

#[test]
fn sequential_and_parallel_reports_match() {
    let par = lp_lab(&["experiment", "refine", "--config", "refine-sin.conf"]);
    let seq = lp_lab(&[
        "experiment",
        "refine",
        "--config",
        "refine-sin.conf",
        "--sequential",
    ]);
    assert!(par.status.success());
    assert_eq!(par.stdout, seq.stdout);
}
