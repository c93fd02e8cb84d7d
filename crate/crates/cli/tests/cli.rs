use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn qfilter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfilter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report on stdout is JSON")
}

fn signal() -> String {
    data("signal16.csv").display().to_string()
}

#[test]
fn highpass_on_worked_signal() {
    let out = qfilter(&[
        "filter1d",
        &signal(),
        "--filter",
        "highpass",
        "--marked",
        "0,1,15",
        "--mode",
        "project",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let p = r["success_probability"].as_f64().unwrap();
    assert!((p - 0.3392).abs() < 5e-3, "p = {p}");
    assert_eq!(r["marked_count"], 3);
    assert_eq!(r["n_qubits"], 4);
}

#[test]
fn named_cutoff_matches_marked_list() {
    let a = report(&qfilter(&[
        "filter1d",
        &signal(),
        "--filter",
        "highpass",
        "--cutoff",
        "2",
    ]));
    let b = report(&qfilter(&[
        "filter1d",
        &signal(),
        "--filter",
        "highpass",
        "--marked",
        "0,1,15",
    ]));
    assert_eq!(a["success_probability"], b["success_probability"]);
}

#[test]
fn lowpass_keeps_what_highpass_drops() {
    let low = report(&qfilter(&[
        "filter1d",
        &signal(),
        "--filter",
        "lowpass",
        "--marked",
        "0,1,15",
    ]));
    let high = report(&qfilter(&[
        "filter1d",
        &signal(),
        "--filter",
        "highpass",
        "--marked",
        "0,1,15",
    ]));
    let sum = low["success_probability"].as_f64().unwrap() + high["success_probability"].as_f64().unwrap();
    assert!((sum - 1.0).abs() < 1e-12);
}

#[test]
fn output_and_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.csv");
    let report_path = dir.path().join("run.json");
    let out = qfilter(&[
        "filter1d",
        &signal(),
        "--filter",
        "bandstop",
        "--band",
        "2,3",
        "--compare-classical",
        "--out",
        out_path.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(r["schema"], 1);
    assert!(r["classical_comparison_error"].as_f64().unwrap() < 1e-9);
    let values = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(values.lines().count(), 16);
}

#[test]
fn sampled_mode_is_reproducible() {
    let args = [
        "filter1d",
        &signal(),
        "--filter",
        "highpass",
        "--cutoff",
        "2",
        "--mode",
        "sample",
        "--seed",
        "11",
    ];
    let a = report(&qfilter(&args));
    let b = report(&qfilter(&args));
    assert_eq!(a["trials_used"], b["trials_used"]);
    assert!(a["trials_used"].as_u64().unwrap() >= 1);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["filter1d"],
        vec!["filter1d", "x.csv", "--filter", "sideways"],
        vec!["filter1d", "x.csv", "--mode", "sample"],
        vec!["filter1d", "x.csv", "--filter", "lowpass"],
        vec!["filter1d", "x.csv", "--filter", "bandpass", "--band", "5,2"],
        vec!["transpose", "x.csv", "--scheme", "diagonal"],
        vec!["nonsense"],
    ] {
        assert_eq!(code(&qfilter(&args)), 1, "{args:?}");
    }
    assert_eq!(
        code(&qfilter(&[
            "filter1d",
            &signal(),
            "--filter",
            "custom",
            "--marked",
            "16"
        ])),
        1
    );
}

#[test]
fn data_errors_exit_2() {
    let out = qfilter(&["filter1d", "definitely-missing.csv"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("definitely-missing.csv"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1\n2\nthree\n").unwrap();
    let out = qfilter(&["filter1d", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains(":3:"));
}

#[test]
fn annihilation_and_retry_budget_exit_3() {
    // A constant has all its spectral mass at DC.
    let dir = tempfile::tempdir().unwrap();
    let flat = dir.path().join("flat.csv");
    std::fs::write(&flat, "1\n".repeat(8)).unwrap();
    let flat = flat.to_str().unwrap();
    let out = qfilter(&["filter1d", flat, "--filter", "highpass", "--cutoff", "1"]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));

    let out = qfilter(&[
        "filter1d",
        flat,
        "--filter",
        "highpass",
        "--cutoff",
        "1",
        "--mode",
        "sample",
        "--seed",
        "1",
        "--max-trials",
        "5",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn transpose_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = data("matrix4x4.csv");
    for (scheme, layout) in [
        ("cnot", Some("layout_cnot.json")),
        ("cswap", Some("layout_cswap.json")),
        ("rowmajor", None),
    ] {
        let out_path = dir.path().join(format!("{scheme}.csv"));
        let layout_path = layout.map(data);
        let mut args = vec![
            "transpose".to_string(),
            matrix.display().to_string(),
            "--scheme".into(),
            scheme.into(),
            "--out".into(),
            out_path.display().to_string(),
        ];
        if let Some(l) = &layout_path {
            args.extend(["--layout".into(), l.display().to_string()]);
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(code(&qfilter(&args)), 0, "{scheme}");
        let text = std::fs::read_to_string(&out_path).unwrap();
        let rows: Vec<Vec<f64>> = text
            .lines()
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert!((v - (4 * c + r) as f64).abs() < 1e-9, "{scheme} ({r},{c}) = {v}");
            }
        }
    }
}

#[test]
fn filter2d_writes_an_image() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("low.pgm");
    let image = data("wave16.pgm");
    for composed in [false, true] {
        let mut args = vec![
            "filter2d",
            image.to_str().unwrap(),
            "--filter",
            "lowpass",
            "--cutoff",
            "3",
            "--out",
            out_path.to_str().unwrap(),
        ];
        if composed {
            args.push("--composed-2d");
        }
        let out = qfilter(&args);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let bytes = std::fs::read(&out_path).unwrap();
        assert!(bytes.starts_with(b"P5"));
        assert!(report(&out)["clamped_count"].is_u64());
    }
}

#[test]
fn selftest_passes() {
    let out = qfilter(&["selftest"]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(!table.contains("FAIL"), "{table}");
    assert!(table.contains("checks passed"));
}

#[test]
fn help_exits_0() {
    assert_eq!(code(&qfilter(&["--help"])), 0);
    assert_eq!(code(&qfilter(&["filter1d", "--help"])), 0);
}
