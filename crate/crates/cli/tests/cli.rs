use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn swanson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swanson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of a CSV document, without header and `#` summary lines.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn summary(text: &str, key: &str) -> String {
    let prefix = format!("# {key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no summary key {key}"))
        .to_owned()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn spectrum_analytic_levels() {
    let o = swanson(&[
        "spectrum", "--w", "2", "--alpha", "0.5", "--beta", "0.5", "--levels", "3", "--method",
        "analytic",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("n,E_real,E_imag,method,residual,converged\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    for (n, row) in r.iter().enumerate() {
        assert!((num(&row[1]) - 3f64.sqrt() * (n as f64 + 0.5)).abs() < 1e-15);
        assert_eq!(row[3], "analytic");
    }
    assert_eq!(r[0][1], "0.86602540378443860");

    let o = swanson(&[
        "spectrum", "--w", "2", "--alpha", "0", "--beta", "0", "--levels", "2",
    ]);
    let r = rows(&stdout(&o));
    assert_eq!((num(&r[0][1]), num(&r[1][1])), (1.0, 3.0));
}

#[test]
fn spectrum_rejects_complex_region() {
    let o = swanson(&[
        "spectrum", "--w", "1", "--alpha", "0.8", "--beta", "0.5", "--method", "analytic",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotRealSpectrum"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn spectrum_numeric_methods_agree_with_closed_form() {
    for method in ["raw-fock", "hermitized"] {
        let o = swanson(&[
            "spectrum", "--w", "5", "--alpha", "1", "--beta", "4", "--method", method, "--trunc",
            "128", "--levels", "4",
        ]);
        assert!(o.status.success(), "{method}: {}", stderr(&o));
        for (n, row) in rows(&stdout(&o)).iter().enumerate() {
            assert!(
                (num(&row[1]) - 3.0 * (n as f64 + 0.5)).abs() < 1e-8,
                "{method} {row:?}"
            );
            assert_eq!(row[5], "true");
        }
    }
}

#[test]
fn classify_examples() {
    let cases = [
        (["3", "1", "2"], "RealCaseII", 1.0),
        (["2", "0.5", "0.5"], "HermitianLimit", 3.0),
        (["1", "1", "1"], "ComplexPair", -3.0),
    ];
    for ([w, a, b], class, omega_sq) in cases {
        let o = swanson(&["classify", "--w", w, "--alpha", a, "--beta", b]);
        assert!(o.status.success());
        let r = rows(&stdout(&o));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0][5], class);
        assert_eq!(num(&r[0][3]), omega_sq);
    }
}

#[test]
fn classify_json_document() {
    let o = swanson(&[
        "classify", "--w", "3", "--alpha", "1", "--beta", "2", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"][0]["class"], "RealCaseII");
    assert_eq!(v["rows"][0]["mass_term"], 0.0);
}

#[test]
fn perturb_partial_sums_and_footer() {
    let o = swanson(&[
        "perturb", "--w", "2", "--alpha", "0.5", "--beta", "0.5", "--level", "0", "--order", "4",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let sums: Vec<f64> = rows(&text).iter().map(|r| num(&r[2])).collect();
    assert_eq!(sums, [1.0, 1.0, 0.875, 0.875, 0.8671875]);
    assert!((num(&summary(&text, "exact")) - 0.8660254037844386).abs() < 1e-16);
    assert_eq!(summary(&text, "ratio_flag"), "n/a");
    assert_eq!(summary(&text, "exact_radius_ok"), "true");

    let o = swanson(&[
        "perturb", "--w", "2", "--alpha", "0", "--beta", "0.7", "--order", "8",
    ]);
    let r = rows(&stdout(&o));
    assert!(r[1..].iter().all(|row| num(&row[1]) == 0.0));

    let o = swanson(&[
        "perturb", "--w", "2", "--alpha", "1.5", "--beta", "1.5", "--order", "12",
    ]);
    let text = stdout(&o);
    assert_eq!(summary(&text, "exact_radius_ok"), "false");
    assert_eq!(summary(&text, "coupling_bound_ok"), "true");
    assert_eq!(summary(&text, "ratio_flag"), "false");
    assert_eq!(
        rows(&text)[0][3],
        "",
        "no exact energy in the complex region"
    );
}

#[test]
fn perturb_input_errors() {
    let o = swanson(&["perturb", "--w", "0", "--alpha", "0.5", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ZeroUnperturbedFrequency"));
    let o = swanson(&[
        "perturb", "--w", "1", "--alpha", "0.1", "--beta", "0.1", "--order", "41",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("InvalidOrder"));
}

#[test]
fn transform_examples() {
    let o = swanson(&[
        "transform",
        "--chain",
        "case2",
        "--w",
        "5",
        "--alpha",
        "1",
        "--beta",
        "4",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    assert_eq!((r[1][1].as_str(), num(&r[1][2])), ("ladder_squeeze", 0.5));
    assert_eq!((r[2][1].as_str(), num(&r[2][2])), ("gaussian", -0.25));
    assert_eq!((num(&r[2][12]), num(&r[2][14])), (1.0, 2.25));
    assert_eq!(summary(&text, "hermitian"), "true");
    assert_eq!(num(&summary(&text, "spectrum_slope")), 3.0);

    let o = swanson(&[
        "transform",
        "--chain",
        "case1",
        "--w",
        "2",
        "--alpha",
        "0.5",
        "--beta",
        "0.5",
    ]);
    let r = rows(&stdout(&o));
    assert_eq!(num(&r[1][2]), 0.0);

    let o = swanson(&[
        "transform",
        "--chain",
        "case2",
        "--w",
        "3",
        "--alpha",
        "1",
        "--beta",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SingularDenominator"));

    let o = swanson(&[
        "transform",
        "--chain",
        "case1",
        "--w",
        "1",
        "--alpha",
        "1",
        "--beta",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("InvalidRegion"));
}

#[test]
fn scan_small_grid_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let o = swanson(&[
        "scan",
        "--w",
        "2",
        "--alpha",
        "0:2:1",
        "--beta",
        "0:2:1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let r = rows(&text);
    assert_eq!(r.len(), 9);
    let mid = &r[4];
    assert_eq!((num(&mid[1]), num(&mid[2]), num(&mid[3])), (1.0, 1.0, 0.0));
    assert_eq!(mid[5], "DegenerateBoundary");

    let manifest: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("grid.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["tool"], "swanson");
    assert_eq!(manifest["command"], "scan");
    assert!(manifest["convention"]
        .as_str()
        .unwrap()
        .contains("a = (x + i p)/sqrt(2)"));
    assert_eq!(manifest["config"]["alpha"], "0:2:1");
    assert_eq!(manifest["config"]["point_count"], 9);
    assert_eq!(manifest["input_hash"].as_str().unwrap().len(), 64);
    assert!(manifest["timestamp"].is_string());
}

#[test]
fn single_point_scan_matches_classify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.csv");
    let args = ["--w", "3", "--alpha", "0.25", "--beta", "1.5"];
    let scan = swanson(&[&["scan", "--out", out.to_str().unwrap()][..], &args].concat());
    assert!(scan.status.success());
    let classify = swanson(&[&["classify"][..], &args].concat());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&classify));
}

#[test]
fn scan_failures_leave_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.csv");
    let o_str = out.to_str().unwrap();
    for args in [
        vec![
            "scan", "--w", "2", "--alpha", "1:0:0.1", "--beta", "0", "--out", o_str,
        ],
        vec![
            "scan", "--w", "2", "--alpha", "0:1:0", "--beta", "0", "--out", o_str,
        ],
        vec![
            "scan",
            "--w",
            "0:1:0.01",
            "--alpha",
            "0:1:0.01",
            "--beta",
            "0:1:0.01",
            "--max-points",
            "1000",
            "--out",
            o_str,
        ],
        vec!["scan", "--w", "2", "--alpha", "0", "--beta", "0"],
    ] {
        let o = swanson(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains("InvalidArgument"), "{args:?}");
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn convergence_table_and_exit_codes() {
    let o = swanson(&[
        "convergence",
        "--w",
        "5",
        "--alpha",
        "1",
        "--beta",
        "4",
        "--dims",
        "32,64,96",
        "--levels",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(rows(&text).len(), 4);
    assert_eq!(summary(&text, "stable_levels"), "2");
    assert!((num(&summary(&text, "E_1_real")) - 4.5).abs() < 1e-8);

    let o = swanson(&[
        "convergence",
        "--w",
        "1",
        "--alpha",
        "0.8",
        "--beta",
        "0.5",
        "--dims",
        "32,64",
        "--levels",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("NoStableLevels"));
    assert_eq!(summary(&stdout(&o), "stable_levels"), "0");

    let o = swanson(&[
        "convergence",
        "--w",
        "5",
        "--alpha",
        "1",
        "--beta",
        "4",
        "--dims",
        "64,32",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let o = swanson(&[
        "convergence",
        "--w",
        "3",
        "--alpha",
        "0.2",
        "--beta",
        "0.9",
        "--method",
        "hermitized",
        "--dims",
        "64,128",
        "--levels",
        "3",
    ]);
    assert!(o.status.success());
    assert_eq!(summary(&stdout(&o), "stable_levels"), "3");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["classify", "--w", "2", "--alpha", "0.5"],
        vec!["classify", "--w", "x", "--alpha", "0.5", "--beta", "0.5"],
        vec![
            "classify", "--w", "0:2:1", "--alpha", "0.5", "--beta", "0.5",
        ],
        vec![
            "classify", "--w", "2", "--alpha", "0.5", "--beta", "0.5", "--format", "xml",
        ],
        vec![
            "spectrum", "--w", "2", "--alpha", "0.5", "--beta", "0.5", "--method", "raw-fock",
            "--trunc", "8",
        ],
        vec!["transform", "--w", "2", "--alpha", "0.5", "--beta", "0.5"],
        vec!["frobnicate"],
    ] {
        assert_eq!(swanson(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn negative_values_are_accepted() {
    let o = swanson(&["classify", "--w", "-2", "--alpha", "-0.5", "--beta", "0.25"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(num(&rows(&stdout(&o))[0][0]), -2.0);
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    write(
        &cfg,
        "w = 2\nalpha = 0.5\nbeta = 0.5\nlevels = 2\nformat = \"json\"\n",
    );
    let cfg = cfg.to_str().unwrap();

    let o = swanson(&["spectrum", "--config", cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!((v["rows"][0]["E_real"].as_f64().unwrap() - 0.75f64.sqrt()).abs() < 1e-15);

    let o = swanson(&[
        "spectrum", "--config", cfg, "--w", "4", "--levels", "3", "--format", "csv",
    ]);
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 3);
    assert!((num(&r[0][1]) - 0.5 * 15f64.sqrt()).abs() < 1e-15);

    let bad = dir.path().join("bad.toml");
    write(&bad, "colour = 1\n");
    let o = swanson(&["classify", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn manifest_records_resolved_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    write(&cfg, "order = 8\nlevel = 1\n");
    let out = dir.path().join("series.csv");
    let o = swanson(&[
        "perturb",
        "--config",
        cfg.to_str().unwrap(),
        "--w",
        "2",
        "--alpha",
        "0.2",
        "--beta",
        "0.3",
        "--order",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("series.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(m["config"]["order"], 10);
    assert_eq!(m["config"]["level"], 1);
    assert_eq!(m["config"]["w"], 2.0);
    assert_eq!(m["config"]["format"], "csv");
    assert_eq!(rows(&std::fs::read_to_string(&out).unwrap()).len(), 11);
}
