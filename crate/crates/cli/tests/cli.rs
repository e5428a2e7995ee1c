use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_monogenic");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn basis_z2_3_degree_2() {
    let doc = json(&["basis", "--group", "z2^3", "--kappa", "1/2,1/3,1/4", "--eps", "-1", "--degree", "2"]);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 6);
    assert_eq!(doc["certificates"]["rank"], 6);
    assert_eq!(doc["certificates"]["kernel"], true);
    assert_eq!(doc["meta"]["kind"], "maxwell");
    assert_eq!(doc["meta"]["kappa"], serde_json::json!(["1/2", "1/3", "1/4"]));
}

#[test]
fn degree_zero_is_constant_spinors() {
    let doc = json(&["basis", "--group", "z2^2", "--degree", "0"]);
    let elems = doc["elements"].as_array().unwrap();
    assert_eq!(elems.len(), 2);
    for e in elems {
        let comps = e["components"].as_array().unwrap();
        let nonzero: Vec<_> = comps.iter().filter(|c| !c.as_array().unwrap().is_empty()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0][0][0], serde_json::json!([0, 0]));
    }
}

#[test]
fn ck_on_b2_is_a_config_error() {
    let (code, out, err) = run(&["basis", "--group", "b2", "--kind", "ck", "--degree", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("CK requires Z2^d"), "{err}");
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["basis", "--group", "a2", "--degree", "1"][..],
        &["basis", "--group", "z2^2", "--kappa", "1/2", "--degree", "1"],
        &["basis", "--group", "z2^2", "--eps", "0", "--degree", "1"],
        &["basis", "--group", "z2^2"],
        &["verify", "--group", "z2^2", "--suite", "nonsense"],
        &["dims", "--group", "z2^2", "--format", "yaml"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{err}");
    }
}

#[test]
fn verify_passes_and_reports() {
    let (code, out, _) = run(&["verify", "--group", "z2^2", "--suite", "osp12", "--max-degree", "2"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("[PASS]") || l.starts_with("suite osp12:")), "{out}");
    assert!(out.ends_with("0 failed\n"));

    let doc = json(&["verify", "--group", "b2", "--suite", "kelvin", "--max-degree", "2", "--format", "json"]);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["suite"], "kelvin");
    assert!(!doc["checks"].as_array().unwrap().is_empty());
}

#[test]
fn dims_tables() {
    let doc = json(&["dims", "--group", "z2^3", "--max-degree", "4", "--format", "json"]);
    let dims: Vec<u64> = doc["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 4, 6, 8, 10]);
    assert!(doc["rows"].as_array().unwrap().iter().all(|r| r["dim"] == r["rank"]));

    let (code, out, _) = run(&["dims", "--group", "z2^2", "--max-degree", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,dim,rank\n0,2,2\n1,2,2\n2,2,2\n3,2,2\n");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "group = \"z2^2\"\nkappa = \"1/5, 1/7\"\nepsilon = 1\ndegree = 1\nformat = \"json\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let doc = json(&["basis", "--config", cfg]);
    assert_eq!(doc["meta"]["eps"], 1);
    assert_eq!(doc["meta"]["kappa"], serde_json::json!(["1/5", "1/7"]));
    assert_eq!(doc["meta"]["degree"], 1);

    let doc = json(&["basis", "--config", cfg, "--eps", "-1", "--degree", "2"]);
    assert_eq!(doc["meta"]["eps"], -1);
    assert_eq!(doc["meta"]["degree"], 2);

    std::fs::write(dir.path().join("bad.toml"), "colour = \"red\"\n").unwrap();
    let (code, _, _) = run(&["basis", "--config", dir.path().join("bad.toml").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.csv");
    let args = ["basis", "--group", "z2^3", "--degree", "2", "--kind", "partial-z", "--format", "csv"];
    let (_, stdout, _) = run(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let (code, out, _) = run(&with_file);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    assert!(stdout.starts_with("label,spinor_index,component,exponents,coefficient\n"));
}

#[test]
fn latex_output() {
    let (code, out, _) = run(&["basis", "--group", "z2^2", "--degree", "1", "--kind", "ck", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("% ck basis of M_1"));
    assert!(out.contains("\\begin{pmatrix}"));
    assert!(out.trim_end().ends_with("\\end{tabular}"));
}

#[test]
fn b2_basis_over_sqrt2() {
    let doc = json(&["basis", "--group", "b2", "--kappa", "1,1/2", "--degree", "2"]);
    assert_eq!(doc["certificates"]["rank"], doc["certificates"]["expected"]);
    assert_eq!(doc["certificates"]["kernel"], true);
}
