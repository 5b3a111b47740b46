use std::path::PathBuf;
use std::process::{Command, Output};

fn laplext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laplext"))
        .args(args)
        .env_remove("LAPLEXT_REL_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("laplext-cli-{}-{name}", std::process::id()))
}

#[test]
fn halfplane_kernel_csv() {
    let o = laplext(&["kernel", "--kernel", "halfplane", "--y", "1", "--target", "0", "--source", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let value_col = headers.iter().position(|h| h == "value").unwrap();
    let row = rdr.records().next().unwrap().unwrap();
    let v: f64 = row[value_col].parse().unwrap();
    assert!((v - std::f64::consts::FRAC_1_PI).abs() < 1e-15);
}

#[test]
fn oscillator_kernel_json_round_trips_exactly() {
    let o = laplext(&["--format", "json", "kernel", "--kernel", "oscillator", "--a", "1", "--y", "1", "--target", "0", "--source", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let v = recs[0]["value"].as_f64().unwrap();
    assert!((v - 0.259_553_271_994_330_76).abs() < 1e-10);
    // the printed text parses back to the very same double
    let c = laplext(&["kernel", "--kernel", "oscillator", "--a", "1", "--y", "1", "--target", "0", "--source", "0"]);
    let text = stdout(&c);
    let line = text.lines().nth(1).unwrap();
    let csv_v: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
    assert_eq!(csv_v.to_bits(), v.to_bits());
}

#[test]
fn grid_arguments_expand() {
    let o = laplext(&["--format", "json", "kernel", "--kernel", "dirac", "--y", "1", "--target-grid", "0:1:2", "--source-grid", "0:2:3"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(recs.len(), 6);
}

#[test]
fn solve_grid_example() {
    let o = laplext(&["--format", "json", "solve", "--problem", "oscillator", "--a", "1", "--data", "eigenfunction:0", "--y-grid", "0.5:1:2", "--target", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let vals: Vec<f64> = recs.iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert!((vals[0] - (-0.5f64).exp()).abs() < 1e-8);
    assert!((vals[1] - (-1.0f64).exp()).abs() < 1e-8);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["solve", "--problem", "dirac", "--data", "gaussian:0,0.7", "--y-grid", "0.1:0.5:3", "--target-grid", "-1:1:5"];
    let first = laplext(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, laplext(&args).stdout);
}

#[test]
fn output_file_and_sampled_data() {
    let data = tmp("data.csv");
    let mut body = String::from("x,value\n");
    for i in 0..=200 {
        let x = -6.0 + 0.06 * i as f64;
        body.push_str(&format!("{x},{}\n", (-x * x / 2.0f64).exp()));
    }
    std::fs::write(&data, body).unwrap();
    let out = tmp("out.csv");
    let spec = format!("sampled:{}", data.display());
    let o = laplext(&["--output", out.to_str().unwrap(), "solve", "--problem", "oscillator", "--a", "1", "--data", &spec, "--y", "1", "--target", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let written = std::fs::read_to_string(&out).unwrap();
    let v: f64 = written.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!((v - (-1.0f64).exp()).abs() < 1e-4);
    std::fs::remove_file(data).ok();
    std::fs::remove_file(out).ok();
}

#[test]
fn verify_exit_codes() {
    assert_eq!(laplext(&["verify", "--suite", "identities"]).status.code(), Some(0));
    assert_eq!(laplext(&["verify", "--suite", "spectral", "--prefactor", "printed"]).status.code(), Some(1));
    assert_eq!(laplext(&["verify", "--suite", "identities", "--tolerance", "1e-20"]).status.code(), Some(1));
}

#[test]
fn limit_studies() {
    assert_eq!(laplext(&["limit", "--study", "a-to-zero", "--a-seq", "0.1,0.01,0.001"]).status.code(), Some(0));
    assert_eq!(laplext(&["limit", "--study", "a-to-zero", "--a-seq", "0.1,0.01,0.001", "--prefactor", "printed"]).status.code(), Some(1));
    let o = laplext(&["limit", "--study", "boundary", "--problem", "dirac", "--data", "gaussian:0,1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn invalid_input_exits_two() {
    let cases: [&[&str]; 6] = [
        &["kernel", "--kernel", "oscillator", "--y", "1", "--target", "0", "--source", "0"],
        &["kernel", "--kernel", "halfplane", "--y", "-1", "--target", "0", "--source", "0"],
        &["solve", "--problem", "euler", "--a", "1", "--data", "power:1", "--y", "1", "--target", "0"],
        &["solve", "--problem", "dirac", "--data", "nonsense:1", "--y", "1", "--target", "0"],
        &["limit", "--study", "a-to-zero", "--a-seq", ""],
        &["verify", "--suite", "bogus"],
    ];
    for args in cases {
        let o = laplext(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn tolerance_from_environment() {
    let run = |tol: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_laplext"));
        c.args(["solve", "--problem", "dirac", "--data", "bump:0,1", "--y", "0.3", "--target", "0"]);
        match tol {
            Some(t) => c.env("LAPLEXT_REL_TOL", t),
            None => c.env_remove("LAPLEXT_REL_TOL"),
        };
        c.output().unwrap()
    };
    assert_eq!(run(Some("2")).status.code(), Some(2));
    let loose = run(Some("1e-4"));
    assert_eq!(loose.status.code(), Some(0));
    assert_ne!(loose.stdout, run(None).stdout);
    // the flag wins over the environment
    let flagged = Command::new(env!("CARGO_BIN_EXE_laplext"))
        .args(["--rel-tol", "1e-4", "solve", "--problem", "dirac", "--data", "bump:0,1", "--y", "0.3", "--target", "0"])
        .env("LAPLEXT_REL_TOL", "1e-10")
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, loose.stdout);
}
