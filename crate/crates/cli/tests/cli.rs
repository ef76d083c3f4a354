use std::process::{Command, Output};

fn cpvquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpvquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn integrate_constant_prints_log() {
    let out = cpvquad(&["integrate", "--f", "1", "--tau", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let field = |key: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(key)).unwrap();
        line.split_whitespace().nth(1).unwrap().parse().unwrap()
    };
    assert!((field("value") - (1.0f64 / 3.0).ln()).abs() < 1e-15);
    assert!(field("estimate") <= 1e-13);
    assert!(field("evaluations") > 0.0);
}

#[test]
fn integrate_json_has_the_documented_fields() {
    let out = cpvquad(&["integrate", "--f", "exp(x)", "--tau", "0.5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in [
        "value",
        "estimate",
        "budget",
        "evaluations",
        "converged",
        "method",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["budget"].as_object().unwrap().len(), 7);
    assert!((v["value"].as_f64().unwrap() - cpvquad::bench::reference::EXP_T05).abs() < 5e-12);
}

#[test]
fn negative_arguments_and_general_intervals() {
    let out = cpvquad(&[
        "integrate",
        "--f",
        "1",
        "--tau",
        "-3",
        "--a",
        "-5",
        "--b",
        "-2",
        "--json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // PV ∫_{-5}^{-2} dx/(x + 3) = ln(1/2)
    assert!((v["value"].as_f64().unwrap() - 0.5f64.ln()).abs() < 1e-14);
}

#[test]
fn cutoff_method_is_selectable() {
    let out = cpvquad(&[
        "integrate",
        "--f",
        "sin(550*x)",
        "--tau",
        "0.8",
        "--method",
        "cutoff",
        "--mu",
        "1e-20",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["method"], "cutoff");
    assert!(v["budget"]["cutoff"].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_input_exits_with_usage_status() {
    for args in [
        &["integrate", "--f", "2+", "--tau", "0.5"][..],
        &["integrate", "--f", "1", "--tau", "1.5"],
        &[
            "integrate",
            "--f",
            "1",
            "--tau",
            "0.5",
            "--method",
            "simpson",
        ],
        &["integrate", "--tau", "0.5"],
        &["bench", "--tol", "abc"],
        &["nonsense"],
    ] {
        assert_eq!(cpvquad(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unmet_tolerance_exits_one_and_still_prints() {
    let out = cpvquad(&[
        "integrate",
        "--f",
        "sin(1/(x+1.00001))",
        "--tau",
        "0.5",
        "--tol",
        "1e-16",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("value"));
}

#[test]
fn bench_writes_csv_and_json_that_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = cpvquad(&["bench", "--csv", csv.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = cpvquad::bench::read_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 9);

    let json = dir.path().join("out.json");
    let out = cpvquad(&["bench", "--json", json.to_str().unwrap(), "--concurrent"]);
    assert_eq!(out.status.code(), Some(0));
    let jrows = cpvquad::bench::read_json(std::fs::File::open(&json).unwrap()).unwrap();
    for (a, b) in rows.iter().zip(&jrows) {
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
    }
}

#[test]
fn consecutive_bench_runs_are_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<_> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("run{i}.csv"));
            assert_eq!(
                cpvquad(&["bench", "--csv", path.to_str().unwrap()])
                    .status
                    .code(),
                Some(0)
            );
            cpvquad::bench::read_csv(std::fs::File::open(&path).unwrap()).unwrap()
        })
        .collect();
    let cols = |rows: &[cpvquad::bench::BenchmarkRow]| -> Vec<(u64, u64)> {
        rows.iter()
            .map(|r| (r.value.to_bits(), r.error_estimate.to_bits()))
            .collect()
    };
    assert_eq!(cols(&runs[0]), cols(&runs[1]));
}

#[test]
fn observation_writes_one_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("obs.csv");
    let out = cpvquad(&[
        "observation",
        "--m-min",
        "2",
        "--m-max",
        "4",
        "--n-max",
        "5",
        "--trials",
        "20",
        "--seed",
        "7",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 5);
    assert!(text.starts_with("m,n,trials,max_ratio,witness_seed"));
    assert_eq!(
        cpvquad(&["observation", "--trials", "5000"]).status.code(),
        Some(2)
    );
}
