//! End-to-end runs of the binary: golden outputs, agreement with direct
//! library calls, output formats and exit statuses.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/cli`.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use conformal_cones::cli::{parse_csv_tables, OutputRecord};
use conformal_cones::cone::ConeSpec;
use conformal_cones::counterex::{integrate_ode, sigma_half_constant, OdeSetup};
use conformal_cones::radial::{solve_dirichlet, DirichletAnnulus};

const BIN: &str = env!("CARGO_BIN_EXE_conformal-cones");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("CONFORMAL_CONES_TOLERANCES").output().expect("binary runs")
}

fn record(args: &[&str]) -> OutputRecord {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    OutputRecord::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/cli")
}

/// Structural equality with numbers compared to a relative tolerance.
fn close(a: &Value, b: &Value, path: &str) -> Result<(), String> {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if (x - y).abs() <= 1e-9 * (1.0 + y.abs()) {
                Ok(())
            } else {
                Err(format!("{path}: {x} vs {y}"))
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            x.iter().zip(y).enumerate().try_for_each(|(i, (p, q))| close(p, q, &format!("{path}[{i}]")))
        }
        (Value::Object(x), Value::Object(y)) if x.len() == y.len() => x.iter().try_for_each(|(k, v)| {
            let w = y.get(k).ok_or_else(|| format!("{path}.{k}: missing"))?;
            close(v, w, &format!("{path}.{k}"))
        }),
        _ if a == b => Ok(()),
        _ => Err(format!("{path}: {a} vs {b}")),
    }
}

fn check_golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    let got: Value = serde_json::from_slice(&out.stdout).unwrap();
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
        return;
    }
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let want: Value = serde_json::from_str(&text).unwrap();
    if let Err(e) = close(&got, &want, name) {
        panic!("{name} differs from its golden file: {e}");
    }
}

#[test]
fn golden_outputs() {
    let cases: &[(&str, &[&str])] = &[
        ("cone_info", &["cone", "info", "--family", "gamma-k", "--n", "4", "--k", "2"]),
        ("cone_info_circular", &["cone", "info", "--family", "circular", "--n", "3", "--c", "0.5"]),
        ("radial_classify", &["radial", "classify", "--cone", "neg-dual-gamma-2", "--n", "5"]),
        (
            "radial_dirichlet",
            &[
                "radial",
                "dirichlet",
                "--a",
                "1",
                "--b",
                "2",
                "--alpha",
                "0",
                "--beta",
                "-1",
                "--cone",
                "gamma-1",
                "--n",
                "2",
            ],
        ),
        (
            "radial_dirichlet_kink",
            &[
                "radial",
                "dirichlet",
                "--a",
                "1",
                "--b",
                "3",
                "--alpha",
                "0",
                "--beta",
                "-1",
                "--cone",
                "ordered-linear:0,1,0",
                "--n",
                "3",
            ],
        ),
        ("ode_run", &["ode", "run", "--gamma", "-3", "--v0", "0", "--w0", "1", "--stride", "400"]),
        ("blowup", &["counterexample", "blowup", "--kind", "neg-sigma-half", "--n", "4", "--j", "5", "--points", "20"]),
        ("symfun_check", &["symfun", "check", "--family", "sigma-k", "--k", "2", "--n", "3", "--samples", "100"]),
        ("symfun_gauge", &["symfun", "check", "--gauge-from", "gamma-2", "--n", "3", "--samples", "100"]),
        ("verify_bubble", &["verify", "bubble", "--n", "3", "--a", "1", "--b", "1", "--samples", "5"]),
        ("ricci_constants", &["ricci", "constants", "--example", "ricci-eigenvalue", "--n", "4", "--samples", "4"]),
    ];
    for (name, args) in cases {
        check_golden(name, args);
    }
}

#[test]
fn cone_info_matches_the_library() {
    let rec = record(&["cone", "info", "--family", "gamma-k", "--n", "6", "--k", "3"]);
    let cone = ConeSpec::gamma_k(6, 3).unwrap();
    assert_eq!(rec.result["mu_plus"].as_f64().unwrap(), cone.mu_plus().unwrap());
    assert_eq!(rec.result["mu_minus"], "inf");
}

#[test]
fn dirichlet_matches_the_library() {
    let rec = record(&[
        "radial",
        "dirichlet",
        "--a",
        "0.5",
        "--b",
        "2",
        "--alpha",
        "1",
        "--beta",
        "3",
        "--cone",
        "gamma-2",
        "--n",
        "5",
    ]);
    let rep = solve_dirichlet(&ConeSpec::gamma_k(5, 2).unwrap(), &DirichletAnnulus::new(0.5, 2.0, 1.0, 3.0).unwrap())
        .unwrap();
    assert_eq!(rec.result["solvable"], Value::Bool(rep.solvable));
    assert_eq!(rec.result["clause"], Value::String(rep.clause));
}

#[test]
fn ode_matches_the_library() {
    let rec = record(&["ode", "run", "--gamma", "0.5", "--v0", "0.2", "--w0", "-0.3", "--window", "20"]);
    let tr = integrate_ode(&OdeSetup::new(0.5, 0.2, -0.3).unwrap(), 20.0, 1e8).unwrap();
    let table = rec.table("trajectory").unwrap();
    assert_eq!(table.rows.len(), tr.samples.len());
    let last = tr.samples.last().unwrap();
    let t = table.column("t").unwrap();
    let w = table.column("w").unwrap();
    assert_eq!(t.last().unwrap().as_f64().unwrap(), last.t);
    assert_eq!(w.last().unwrap().as_f64().unwrap(), last.w);
    assert_eq!(rec.diagnostics["drift"].as_f64().unwrap(), tr.drift);
}

#[test]
fn blowup_reports_the_closed_form_constant() {
    let rec =
        record(&["counterexample", "blowup", "--kind", "neg-sigma-half", "--n", "6", "--j", "4", "--points", "10"]);
    let text = rec.to_json();
    assert!(text.contains(&sigma_half_constant(6).unwrap().to_string()), "{text}");
}

#[test]
fn csv_output_parses_back_to_the_json_tables() {
    let args = ["counterexample", "blowup", "--kind", "neg-general", "--n", "3", "--j", "5", "--points", "10"];
    let json = record(&args);
    let mut with_csv = vec!["--csv"];
    with_csv.extend_from_slice(&args);
    let out = run(&with_csv);
    assert_eq!(out.status.code(), Some(0));
    let tables = parse_csv_tables(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(tables, json.tables);
}

#[test]
fn out_flag_writes_the_same_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("info.json");
    let args = ["cone", "info", "--family", "extremal-largest", "--n", "4", "--mu", "2.5"];
    let out = run(&[&["--out", path.to_str().unwrap()][..], &args[..]].concat());
    assert_eq!(out.status.code(), Some(0));
    let written = OutputRecord::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, record(&args));
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["cone", "info", "--family", "gamma-k", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["cone", "info", "--family", "gamma-k", "--n", "4", "--k", "9"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["radial", "classify", "--cone", "sphere:1", "--n", "3"]).status.code(), Some(2));
    let io = run(&["--out", "/nonexistent-dir/x.json", "cone", "info", "--family", "gamma-k", "--n", "3", "--k", "1"]);
    assert_eq!(io.status.code(), Some(1));
    let strict = Command::new(BIN)
        .args(["ode", "run", "--gamma", "0.5", "--v0", "0", "--w0", "1", "--window", "50"])
        .env("CONFORMAL_CONES_TOLERANCES", "drift=1e-300")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(3), "{}", String::from_utf8_lossy(&strict.stderr));
    let bad_env = Command::new(BIN)
        .args(["cone", "info", "--family", "gamma-k", "--n", "3", "--k", "1"])
        .env("CONFORMAL_CONES_TOLERANCES", "drift=abc")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn usage_errors_print_one_line() {
    let out = run(&["ode", "run", "--gamma", "x", "--v0", "0", "--w0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(out.stdout.is_empty());
}
