use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vkplate"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vkplate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn verify(cfg: &str, out: &PathBuf, extra: &[&str]) -> Output {
    run(bin().arg("verify").arg(config(cfg)).arg("--out").arg(out).args(extra))
}

fn report(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn disclination_verifies_and_reports_every_equation() {
    let out = scratch("disc.json");
    let o = verify("disclination_positive.json", &out, &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("12/12 equations matched"), "{stdout}");
    let r = report(&out);
    assert_eq!(r["scenario"], "disclination");
    assert_eq!(r["all_matched"], true);
    assert_eq!(r["equations"].as_array().unwrap().len(), 12);
    assert_eq!(r["conventions"]["probes"]["seed"], 7);
    for e in r["equations"].as_array().unwrap() {
        for key in ["equation", "region", "probes", "max_raw", "mean_raw", "max_relative", "passed", "matched"] {
            assert!(e.get(key).is_some(), "missing {key} in {e}");
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (scratch("det_a.json"), scratch("det_b.json"));
    assert!(verify("linear_fold.json", &a, &[]).status.success());
    assert!(verify("linear_fold.json", &b, &[]).status.success());
    assert_eq!(std::fs::read_to_string(a).unwrap(), std::fs::read_to_string(b).unwrap());
}

#[test]
fn terminating_fold_records_the_point_condition_as_expected_failure() {
    let out = scratch("term.json");
    let o = verify("terminating_fold.json", &out, &[]);
    assert!(o.status.success());
    let r = report(&out);
    let point = r["equations"].as_array().unwrap().iter().find(|e| e["equation"] == "moment.point.loop").unwrap().clone();
    assert_eq!(point["expected"], "fail");
    assert_eq!(point["passed"], false);
    assert_eq!(point["matched"], true);
    assert_eq!(point["signature"]["kind"], "dirac_gradient");
    assert!((r["parameters"]["mu"].as_f64().unwrap() - 0.92).abs() < 0.005);
}

#[test]
fn circular_fold_reports_both_stress_coefficients() {
    let out = scratch("circ.json");
    assert!(verify("circular_fold_no_couple.json", &out, &[]).status.success());
    let r = report(&out);
    assert!(r["parameters"]["stress_coefficient"].is_f64());
    assert!(r["parameters"]["stress_coefficient_stated"].is_f64());
    assert!(r["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("stress-function coefficient")));
}

#[test]
fn tolerance_override_flips_the_exit_status() {
    let out = scratch("strict.json");
    let o = verify("linear_fold.json", &out, &["--tol-interface", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    let tol = report(&out)["conventions"]["tolerances"]["interface"].as_f64().unwrap();
    assert!((tol / 1e-30 - 1.0).abs() < 1e-12);
}

#[test]
fn unknown_scenario_is_rejected() {
    let cfg = scratch("blob.json");
    std::fs::write(&cfg, r#"{"scenario": "blob", "material": {"E": 1, "D": 1, "nu": 0.3}, "params": {}}"#).unwrap();
    let o = run(bin().arg("verify").arg(&cfg).arg("--out").arg(scratch("blob_report.json")));
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown scenario 'blob'"));
}

#[test]
fn surface_exports_csv_and_obj() {
    let csv = scratch("cone.csv");
    let o = run(bin().arg("surface").arg(config("disclination_positive.json")).args(["--grid", "4,8", "--format", "csv", "--out"]).arg(&csv));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,x2,w"));
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|t| t.parse().unwrap()).collect();
        // s = π gives the cone w = r
        assert!((v[2] - v[0].hypot(v[1])).abs() < 1e-12);
    }
    let obj = scratch("tetra.obj");
    let o = run(bin().arg("surface").arg(config("tetrahedral_folds.json")).args(["--grid", "3,12", "--format", "obj", "--out"]).arg(&obj));
    assert!(o.status.success());
    let text = std::fs::read_to_string(&obj).unwrap();
    assert!(text.lines().any(|l| l.starts_with("f ")));
    assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 3);
}

#[test]
fn solve_ridge_prints_the_triple() {
    let parse = |g: &str| {
        let o = run(bin().args(["solve-ridge", "--gamma", g]));
        assert!(o.status.success());
        let line = String::from_utf8(o.stdout).unwrap();
        line.split_whitespace().map(|kv| kv.split_once('=').unwrap().1.parse::<f64>().unwrap()).collect::<Vec<f64>>()
    };
    let one = parse("1");
    assert!((one[0] - 0.92).abs() < 0.005);
    assert!((one[2] - (one[0] * one[0] - 1.0)).abs() < 1e-12);
    let two = parse("2");
    assert_eq!(one[0], two[0]);
    assert!((two[1] - 2.0 * one[1]).abs() < 1e-10);
    assert!(!run(bin().args(["solve-ridge", "--gamma", "0"])).status.success());
}
