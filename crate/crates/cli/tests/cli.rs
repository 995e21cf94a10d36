use std::f64::consts::PI;
use std::process::{Command, Output};

use eigenshift_cli::{exit_code, main_with_args};
use eigenshift_core::Error;

fn eigenshift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenshift")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV report, split into cells.
fn rows(csv: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = csv.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    (header, lines.map(|l| l.split(',').map(str::to_owned).collect()).collect())
}

fn cell(header: &[String], row: &[String], name: &str) -> f64 {
    let i = header.iter().position(|h| h == name).unwrap();
    row[i].parse().unwrap_or_else(|_| panic!("{name} = `{}`", row[i]))
}

#[test]
fn eigenpair_first_interval_row() {
    let csv = stdout(&eigenshift(&[
        "eigenpair", "--domain", "interval", "--nodes", "101", "--shift", "9.7696", "--iters", "10",
    ]));
    let (header, data) = rows(&csv);
    assert_eq!(
        header,
        ["iter", "mu", "gamma", "rq_phi", "rq_v", "rq_classic", "linf_ratio", "residual", "x0"]
    );
    assert_eq!(data.len(), 11);
    let last = data.last().unwrap();
    assert!((cell(&header, last, "mu") - 9.8688).abs() < 5e-5);
    assert!(cell(&header, last, "residual") < 1e-8);
    assert!(!last[8].is_empty());
    assert!(data[0][7].is_empty() && data[0][8].is_empty());
    // R(φ₀) and R(v₀) are undefined.
    assert!(data[0][3].is_empty() && data[0][4].is_empty());
}

#[test]
fn unrequested_estimators_are_blank() {
    let csv = stdout(&eigenshift(&["eigenpair", "--shift", "9.7696", "--estimator", "mu,rq-v"]));
    let (_, data) = rows(&csv);
    for row in &data[1..] {
        assert!(!row[1].is_empty() && !row[4].is_empty());
        assert!(row[2].is_empty() && row[3].is_empty() && row[5].is_empty() && row[6].is_empty());
    }
}

#[test]
fn square_sample_point_is_a_pair() {
    let csv = stdout(&eigenshift(&[
        "eigenpair", "--domain", "square", "--nodes", "21", "--shift", "19.6", "--iters", "5",
    ]));
    let (_, data) = rows(&csv);
    assert!(data.last().unwrap()[8].contains(';'));
}

#[test]
fn discrete_eigenvalue_shift_exits_with_near_singular_status() {
    let h: f64 = 0.01;
    let l1 = 4.0 / (h * h) * (PI * h / 2.0).sin().powi(2);
    let out = eigenshift(&["eigenpair", "--shift", &format!("{l1:?}")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("discrete eigenvalue"));
}

#[test]
fn nodal_sample_point_exits_with_its_status() {
    // x = 0.5 is a node line of sin(2πx).
    let out = eigenshift(&["eigenpair", "--start", "sin:2", "--shift", "39.3", "--x0", "50"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn invalid_input_exits_with_status_two() {
    for args in [
        vec!["eigenpair", "--nodes", "100", "--shift", "1"],
        vec!["eigenpair", "--shift", "1", "--estimator", "bogus"],
        vec!["eigenpair", "--shift", "1", "--iters", "0"],
        vec!["eigenpair", "--shift", "1", "--x0", "0"],
        vec!["eigenpair"],
        vec!["decompose", "--tol", "-1"],
        vec!["table", "--id", "T9"],
        vec!["sweep", "--nodes", "101"],
    ] {
        assert_eq!(eigenshift(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn exit_status_mapping() {
    assert_eq!(exit_code(&Error::ZeroStart), 4);
    assert_eq!(exit_code(&Error::EmptyResult { tolerance: 1.0 }), 6);
    assert_eq!(exit_code(&Error::NoValidPoint { draws: 100 }), 5);
    assert_eq!(exit_code(&Error::InvalidGrid("x".into())), 2);
    assert_eq!(exit_code(&Error::MissingIterate { index: 3, last: 2 }), 1);
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.{format}"))).collect();
        for path in &paths {
            let status = main_with_args([
                "eigenshift", "eigenpair", "--domain", "square", "--nodes", "31", "--shift", "48",
                "--seed", "7", "--format", format, "--out", path.to_str().unwrap(),
            ]);
            assert_eq!(status, 0);
        }
        let a = std::fs::read(&paths[0]).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    }
}

#[test]
fn json_mirrors_csv_fields() {
    let csv = stdout(&eigenshift(&["eigenpair", "--shift", "9.7696", "--iters", "3"]));
    let json = stdout(&eigenshift(&["eigenpair", "--shift", "9.7696", "--iters", "3", "--format", "json"]));
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let (header, data) = rows(&csv);
    let records = parsed.as_array().unwrap();
    assert_eq!(records.len(), data.len());
    for (record, row) in records.iter().zip(&data) {
        let keys: Vec<_> = record.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, header);
        for (name, text) in header.iter().zip(row) {
            match &record[name] {
                serde_json::Value::Null => assert!(text.is_empty(), "{name}"),
                serde_json::Value::String(s) => assert_eq!(s, text),
                number => assert_eq!(number.as_f64().unwrap(), text.parse::<f64>().unwrap(), "{name}"),
            }
        }
    }
}

#[test]
fn decompose_constant_keeps_the_odd_modes() {
    let csv = stdout(&eigenshift(&["decompose", "--shift-mode", "offset-0.1", "--count", "9"]));
    let (header, data) = rows(&csv);
    assert_eq!(header, ["eigenvalue", "coefficient", "shift_used", "residual", "parseval_sum", "reconstruction_error"]);
    assert_eq!(data.len(), 6);
    for (row, k) in data.iter().zip([1.0, 3.0, 5.0, 7.0, 9.0]) {
        let want = 2.0 * 2f64.sqrt() / (k * PI);
        assert!((cell(&header, row, "coefficient") - want).abs() < 1e-4);
        assert!(row[4].is_empty());
    }
    let summary = &data[5];
    assert!(summary[0].is_empty());
    assert!(cell(&header, summary, "parseval_sum") > 0.94);
}

#[test]
fn decompose_single_mode_and_explicit_shifts() {
    let csv = stdout(&eigenshift(&["decompose", "--start", "sin:3", "--shifts", "9.7,39.4,88.7,157.8"]));
    let (header, data) = rows(&csv);
    assert_eq!(data.len(), 2);
    assert!((cell(&header, &data[0], "eigenvalue") - 88.7607).abs() < 1e-3);
    assert!(cell(&header, &data[1], "reconstruction_error") < 1e-6);
}

#[test]
fn decompose_with_huge_tolerance_is_empty() {
    let out = eigenshift(&["decompose", "--tol", "10"]);
    assert_eq!(out.status.code(), Some(6));
    assert!(out.stdout.is_empty());
}

#[test]
fn decompose_dumps_eigenfunctions() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("modes.csv");
    stdout(&eigenshift(&["decompose", "--count", "3", "--dump", dump.to_str().unwrap()]));
    let text = std::fs::read_to_string(&dump).unwrap();
    let (header, data) = rows(&text);
    assert_eq!(header, ["node", "x", "e1", "e2"]);
    assert_eq!(data.len(), 101);
}

#[test]
fn interval_sweep_is_second_order() {
    let csv = stdout(&eigenshift(&["sweep", "--nodes", "101,201,401"]));
    let (header, data) = rows(&csv);
    assert_eq!(data.len(), 3);
    let order = cell(&header, &data[2], "fitted_order");
    assert!((1.8..=2.2).contains(&order), "{order}");
}

#[test]
fn square_sweep_error_ratio_is_four() {
    let csv = stdout(&eigenshift(&["sweep", "--domain", "square", "--nodes", "101,201", "--mode", "3:3"]));
    let (header, data) = rows(&csv);
    let ratio = cell(&header, &data[1], "error_ratio");
    assert!((3.5..=4.5).contains(&ratio), "{ratio}");
    assert_eq!(data[1][0], "201x201");
}

#[test]
fn interval_table_layout() {
    let csv = stdout(&eigenshift(&["table", "--id", "T1"]));
    let (header, data) = rows(&csv);
    assert_eq!(&header[..6], ["k", "lambda", "mu_10", "gamma_10", "rq_phi_10", "rq_v_10"]);
    assert_eq!(data.len(), 8);
    assert!((cell(&header, &data[2], "mu_10") - 88.7607).abs() < 1e-3);
    assert!((cell(&header, &data[1], "rq_v_10") - 9.8691).abs() < 1e-3);
}

#[test]
fn refinement_table_on_small_grids() {
    let csv = stdout(&eigenshift(&["table", "--table", "7", "--max-grid", "200"]));
    let (header, data) = rows(&csv);
    assert_eq!(data.len(), 2);
    let e1 = cell(&header, &data[0], "rel_error");
    let e2 = cell(&header, &data[1], "rel_error");
    assert!((3.5..=4.5).contains(&(e1 / e2)));
}

#[test]
fn random_table_reports_its_seed() {
    let csv = stdout(&eigenshift(&["table", "--id", "T4", "--scale", "0.1", "--seed", "11"]));
    let (header, data) = rows(&csv);
    assert_eq!(header, ["epsilon", "n_sigma", "n_lambda", "seed"]);
    assert!(data.iter().all(|r| r[3] == "11"));
    let total: usize = data.iter().map(|r| r[2].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 10);
}

#[test]
fn histogram_table_detail_rows() {
    let csv = stdout(&eigenshift(&["table", "--id", "T3", "--scale", "0.05", "--detail"]));
    let (header, data) = rows(&csv);
    assert_eq!(header[2], "rq_v_30");
    assert_eq!(data.len(), 5);
    for row in &data {
        assert!(cell(&header, row, "rel_error") < 1e-4);
    }
}
