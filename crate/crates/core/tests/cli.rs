use std::process::{Command, Output};

use serde_json::Value;

const GHZ3: &str = r#"{"family":"GGHZ","n":3,"theta":0.7853981633974483}"#;

fn svl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svl")).args(args).output().expect("runs svl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn maximize_ghz() {
    let o = svl(&["maximize", "--state", r#"{"family":"GGHZ","n":3,"theta":0.785398}"#, "--restarts", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o)["value"].as_f64().unwrap();
    assert!((v - 5.656854).abs() < 1e-6, "{v}");
}

#[test]
fn figure1_csv() {
    let o = svl(&["figure", "FIG1", "--points", "91", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,theorem1,gghz_lambda"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 91);
    assert!(rows.iter().all(|r| r[1] <= r[2]));
}

#[test]
fn bound_of_diagonal_reduction() {
    let o = svl(&["bound", "--state", r#"{"family":"GGHZ","n":4,"theta":0}"#, "--reduce", "0,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((json(&o)["value"].as_f64().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn bound_tensor_csv_has_27_rows() {
    let o = svl(&["bound", "--state", GHZ3, "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,j,k,value");
    assert_eq!(lines.len(), 28);
    assert!(lines[1].starts_with("1,1,1,"));
    assert!((lines[1].split(',').nth(3).unwrap().parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn chsh_bound_of_ghz_pair() {
    let o = svl(&["bound", "--state", GHZ3, "--keep", "0,2", "--kind", "chsh"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((json(&o)["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn argument_errors_exit_2() {
    assert_eq!(svl(&["maximize", "--state", GHZ3, "--bogus"]).status.code(), Some(2));
    assert_eq!(svl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(svl(&["maximize"]).status.code(), Some(2));
    assert_eq!(svl(&["maximize", "--state", "{not json"]).status.code(), Some(2));
    assert_eq!(svl(&["figure", "FIG9"]).status.code(), Some(2));
    assert_eq!(svl(&["tradeoff", "theorem7", "--state", GHZ3]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_3() {
    let unnormalized = r#"{"family":"WCLASS","alpha":1,"beta":1,"gamma":0,"delta":0}"#;
    let o = svl(&["state", "--state", unnormalized]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    let ms = r#"{"family":"MS","n":4,"theta":0.3}"#;
    assert_eq!(svl(&["tradeoff", "theorem1", "--state", ms]).status.code(), Some(3));
    assert_eq!(svl(&["figure", "FIG1", "--points", "1"]).status.code(), Some(3));
    assert_eq!(svl(&["bound", "--state", GHZ3, "--keep", "0,0,1"]).status.code(), Some(3));
}

#[test]
fn unconverged_exits_4_unless_allowed() {
    let args = ["maximize", "--state", GHZ3, "--max-iter", "0", "--restarts", "2"];
    let o = svl(&args);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(json(&o)["converged"], Value::Bool(false));
    let mut allowed = args.to_vec();
    allowed.push("--allow-unconverged");
    assert_eq!(svl(&allowed).status.code(), Some(0));
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let args = ["tradeoff", "theorem1", "--state", r#"{"family":"GGHZ","n":4,"theta":0.4}"#, "--seed", "7", "--restarts", "12"];
    let a = svl(&args);
    let b = svl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn state_output_round_trips_through_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ms.json");
    let path = path.to_str().unwrap();
    let spec = r#"{"family":"MS","n":4,"theta":1.1}"#;
    assert_eq!(svl(&["state", "--state", spec, "--output", path]).status.code(), Some(0));
    let direct = svl(&["maximize", "--state", spec, "--keep", "0,1,3", "--restarts", "8"]);
    let via_file = svl(&["maximize", "--state-file", path, "--keep", "0,1,3", "--restarts", "8"]);
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(direct.stdout, via_file.stdout);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["num_qubits"], 4);
    assert_eq!(doc["amplitudes"].as_array().unwrap().len(), 16);
}

#[test]
fn degrees_flag_converts_theta() {
    let rad = svl(&["state", "--state", r#"{"family":"GGHZ","n":3,"theta":0.5235987755982988}"#]);
    let deg = svl(&["state", "--state", r#"{"family":"GGHZ","n":3,"theta":30}"#, "--degrees"]);
    let (a, b) = (json(&rad)["amplitudes"].clone(), json(&deg)["amplitudes"].clone());
    for (x, y) in a.as_array().unwrap().iter().zip(b.as_array().unwrap()) {
        assert!((x[0].as_f64().unwrap() - y[0].as_f64().unwrap()).abs() < 1e-15);
    }
}

#[test]
fn tradeoff_variant_is_reported() {
    let w = r#"{"family":"WCLASS","alpha":0.5,"beta":0.5,"gamma":0.5,"delta":0.5}"#;
    let o = svl(&["tradeoff", "eqn3p", "--state", w, "--variant", "corrected", "--restarts", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["variant"], "corrected");
    assert_eq!(r["mode"], "SUM_SQUARES");
    assert_eq!(r["per_reduction"].as_array().unwrap().len(), 4);
    assert_eq!(r["satisfied"], true);
}
