//! Acceptance criteria, run against the built `monogenic` binary.
//!
//! Prints one `[PASS]`/`[FAIL]` line per criterion and exits nonzero if any
//! fails. All comparisons are exact; there is no tolerance to tune.

use std::process::{Command, ExitCode};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_monogenic");

struct Group {
    name: &'static str,
    kappa: &'static str,
}

const Z2_1: Group = Group { name: "z2^1", kappa: "1/2" };
const Z2_2: Group = Group { name: "z2^2", kappa: "1/2,1/3" };
const Z2_3: Group = Group { name: "z2^3", kappa: "1/2,1/3,1/4" };
const B2: Group = Group { name: "b2", kappa: "1/2,1/3" };

const EPS: [&str; 2] = ["-1", "+1"];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(total: usize, failures: Vec<String>) -> Self {
        match failures.first() {
            None => Outcome { passed: true, detail: format!("{total} checks") },
            Some(first) => Outcome {
                passed: false,
                detail: format!("{} of {total} checks failed; first: {first}", failures.len()),
            },
        }
    }
}

fn run(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(BIN).args(args).output().expect("spawn monogenic");
    (out.status.code().unwrap_or(-1), out.stdout, String::from_utf8_lossy(&out.stderr).into_owned())
}

/// Runs `verify` with JSON output and returns the check list.
fn verify(g: &Group, eps: &str, suite: &str, max_degree: usize) -> Result<Vec<Value>, String> {
    let deg = max_degree.to_string();
    let (code, stdout, stderr) = run(&[
        "verify", "--group", g.name, "--kappa", g.kappa, "--eps", eps, "--suite", suite, "--max-degree", &deg,
        "--format", "json",
    ]);
    if code != 0 && code != 1 {
        return Err(format!("{} {suite} eps={eps}: exit {code}: {}", g.name, stderr.trim()));
    }
    let doc: Value = serde_json::from_slice(&stdout).map_err(|e| format!("bad json from verify: {e}"))?;
    Ok(doc["checks"].as_array().cloned().unwrap_or_default())
}

/// Runs the suites over every listed configuration and folds the results,
/// keeping only checks whose name passes `keep`.
fn sweep(configs: &[(&Group, &str)], suites: &[&str], max_degree: usize, keep: fn(&str) -> bool) -> Outcome {
    let mut total = 0;
    let mut failures = Vec::new();
    for (g, eps) in configs {
        for suite in suites {
            match verify(g, eps, suite, max_degree) {
                Err(e) => failures.push(e),
                Ok(checks) => {
                    for c in checks.iter().filter(|c| keep(c["name"].as_str().unwrap_or(""))) {
                        total += 1;
                        if c["passed"] != Value::Bool(true) {
                            failures.push(format!("{} eps={eps} {}: {}", g.name, c["name"], c["detail"]));
                        }
                    }
                }
            }
        }
    }
    if total == 0 && failures.is_empty() {
        failures.push("no checks ran".to_string());
    }
    Outcome::from_failures(total, failures)
}

fn all(_: &str) -> bool {
    true
}

fn both_eps<'a>(groups: &[&'a Group]) -> Vec<(&'a Group, &'static str)> {
    groups.iter().flat_map(|g| EPS.iter().map(move |e| (*g, *e))).collect()
}

fn osp_suite() -> Outcome {
    sweep(&both_eps(&[&Z2_2, &Z2_3]), &["osp12"], 5, all)
}

fn laplace_suite() -> Outcome {
    sweep(&both_eps(&[&Z2_2, &Z2_3]), &["laplace-symmetries"], 4, all)
}

fn dirac_suite() -> Outcome {
    sweep(&both_eps(&[&Z2_1, &Z2_2, &Z2_3]), &["dirac-symmetries", "kelvin", "projections"], 4, all)
}

fn basis_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 0..=5usize {
        total += 1;
        let deg = n.to_string();
        let (code, stdout, stderr) = run(&[
            "basis", "--group", Z2_3.name, "--kappa", Z2_3.kappa, "--eps", "-1", "--degree", &deg, "--kind", "maxwell",
        ]);
        if code != 0 {
            failures.push(format!("n = {n}: exit {code}: {}", stderr.trim()));
            continue;
        }
        let doc: Value = match serde_json::from_slice(&stdout) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("n = {n}: bad json: {e}"));
                continue;
            }
        };
        let count = doc["elements"].as_array().map_or(0, Vec::len);
        let cert = &doc["certificates"];
        let want = (n + 1) * 2;
        if count != want || cert["rank"] != want || cert["expected"] != want || cert["kernel"] != true {
            failures.push(format!("n = {n}: {count} elements, certificate {cert}, want {want}"));
        }
    }
    let rest = sweep(&[(&Z2_3, "-1")], &["bases"], 5, all);
    total += rest.detail.split(' ').next().and_then(|t| t.parse::<usize>().ok()).unwrap_or(0);
    if !rest.passed {
        failures.push(rest.detail);
    }
    Outcome::from_failures(total, failures)
}

fn constants_suite() -> Outcome {
    // The suite itself covers the opposite sign as well.
    sweep(&[(&Z2_2, "-1"), (&Z2_3, "-1")], &["section5-constants"], 4, all)
}

fn fischer(name: &str) -> bool {
    name.starts_with("Fischer")
}

fn fischer_suite() -> Outcome {
    sweep(&[(&Z2_2, "-1"), (&Z2_3, "-1"), (&B2, "-1")], &["bases"], 4, fischer)
}

fn b2_smoke() -> Outcome {
    sweep(&both_eps(&[&B2]), &["osp12"], 3, all)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "group = \"z2^3\"\nkappa = [\"1/2\", \"1/3\", \"1/4\"]\nepsilon = -1\ndegree = 3\n")
        .expect("write config");
    let cfg = cfg.to_str().expect("utf-8 path");
    let mut failures = Vec::new();
    let mut total = 0;
    for kind in ["maxwell", "ck", "partial-z"] {
        for format in ["json", "csv", "latex"] {
            total += 1;
            let args = ["basis", "--config", cfg, "--kind", kind, "--format", format];
            let (c1, a, _) = run(&args);
            let (c2, b, _) = run(&args);
            if c1 != 0 || c2 != 0 || a != b || a.is_empty() {
                failures.push(format!("{kind}/{format}: exits {c1},{c2}, {} vs {} bytes", a.len(), b.len()));
            }
        }
    }
    Outcome::from_failures(total, failures)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 osp(1|2) and sl(2) relations, z2^2 and z2^3, degree <= 5, both eps", osp_suite),
        ("2 Laplace-side symmetries, projections and H_beta, degree <= 4", laplace_suite),
        ("3 Dirac-side symmetries, Kelvin, z relations and projections, d <= 3, degree <= 4", dirac_suite),
        ("4 Maxwell bases of z2^3, n = 0..5, and their relations", basis_suite),
        ("5 CK, partial-z and Maxwell constants, z2^2 and z2^3, both eps", constants_suite),
        ("6 Fischer decomposition, d = 2, 3, n <= 4", fischer_suite),
        ("7 B2 over Q(sqrt 2), degree <= 3", b2_smoke),
        ("8 byte-identical basis output across runs", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = std::time::Instant::now();
        let out = check();
        let tag = if out.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {name}: {} ({:.1}s)", out.detail, started.elapsed().as_secs_f64());
        if !out.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
