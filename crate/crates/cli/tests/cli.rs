use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SERIAL_DASHPOT_PLASTIC: &str = r#"{"node": "serial", "children": [
    {"node": "leaf", "potential": {"kind": "dashpot", "D": 1}},
    {"node": "leaf", "potential": {"kind": "plastic", "sigma_a": 1}}
]}"#;

fn rheokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rheokit")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn table(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    assert!(out.status.success(), "{:?}: {}", out.status, String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| if x == "inf" { f64::INFINITY } else { x.parse().unwrap() }).collect())
        .collect();
    (header, rows)
}

fn row_at(rows: &[Vec<f64>], x: f64) -> &[f64] {
    rows.iter().find(|r| (r[0] - x).abs() < 1e-12).unwrap()
}

#[test]
fn curve_of_serial_dashpot_and_plastic() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", SERIAL_DASHPOT_PLASTIC);
    // 0.01 + 0.01·k hits 2.0 on a 341-point grid over [0.01, 3.41]
    let (h, rows) = table(&rheokit(&["curve", "--model", path(&m), "--eps-max", "3.41", "--samples", "341"]));
    assert_eq!(h, ["eps", "mu_eff", "sigma"]);
    assert_eq!(rows.len(), 341);
    let r = row_at(&rows, 2.0);
    assert!((r[1] - 0.5).abs() < 1e-12 && (r[2] - 1.0).abs() < 1e-12, "{r:?}");

    let (_, rows) = table(&rheokit(&["curve", "--model", path(&m)]));
    assert_eq!(rows.len(), 100);
    assert_eq!((rows[0][0], rows[99][0]), (0.01, 3.4));
    let steps: Vec<f64> = rows.windows(2).map(|w| w[1][0] - w[0][0]).collect();
    assert!(steps.iter().all(|s| (s - 3.39 / 99.0).abs() < 1e-12));
}

#[test]
fn curve_of_single_dashpot_is_flat() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"node": "leaf", "potential": {"kind": "dashpot", "D": 1}}"#);
    let (_, rows) = table(&rheokit(&["curve", "--model", path(&m), "--eps-min", "0"]));
    assert!(rows.iter().all(|r| r[1] == 1.0));
}

#[test]
fn curve_of_serial_dashpot_and_power_law() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "m.json",
        r#"{"node": "serial", "children": [
            {"node": "leaf", "potential": {"kind": "dashpot", "D": 1}},
            {"node": "leaf", "potential": {"kind": "powerlaw", "D": 1, "n": 3}}]}"#,
    );
    let (_, rows) =
        table(&rheokit(&["curve", "--model", path(&m), "--eps-min", "0", "--eps-max", "4", "--samples", "5"]));
    assert!((row_at(&rows, 2.0)[2] - 1.0).abs() < 1e-12);
}

#[test]
fn output_is_byte_identical_and_written_to_file() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", SERIAL_DASHPOT_PLASTIC);
    let out = dir.path().join("out.csv");
    let a = rheokit(&["curve", "--model", path(&m), "--samples", "257"]);
    let b = rheokit(&["curve", "--model", path(&m), "--samples", "257", "--out", path(&out)]);
    assert!(b.status.success() && b.stdout.is_empty());
    assert_eq!(a.stdout, fs::read(&out).unwrap());
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.lines().nth(1).unwrap().starts_with("1.0000000000000000e-2,"));
    let c = rheokit(&["compare", "--preset", "fig6"]);
    assert_eq!(c.stdout, rheokit(&["compare", "--preset", "fig6"]).stdout);
}

#[test]
fn compare_preset_examples() {
    let (h, rows) = table(&rheokit(&["compare", "--preset", "fig6"]));
    assert_eq!(h.len(), 13);
    assert_eq!(rows.len(), 200);
    let (h2, spot) = table(&rheokit(&["compare", "--eps-min", "1", "--eps-max", "2", "--samples", "2"]));
    assert_eq!(h, h2);
    let col = |name: &str| h.iter().position(|c| c == name).unwrap();
    assert!((spot[1][col("mu_rig_n3")] - 0.5).abs() < 1e-12);
    assert!((spot[0][col("mu_emp_inf")] - 0.5).abs() < 1e-15);
    // small strain rates are dominated by the linear dashpot
    for c in ["mu_rig_n2", "mu_rig_n3", "mu_rig_inf"] {
        assert!((rows[0][col(c)] - 1.0).abs() < 0.02, "{c}: {}", rows[0][col(c)]);
    }
}

#[test]
fn compare_takes_exponent_lists_with_inf() {
    let (h, rows) = table(&rheokit(&["compare", "--n", "2.5,inf", "--d-dif", "2", "--d-dsl", "0.5"]));
    assert_eq!(
        h,
        [
            "eps",
            "mu_rig_n2.5",
            "mu_rig_inf",
            "mu_emp_n2.5",
            "mu_emp_inf",
            "sig_rig_n2.5",
            "sig_rig_inf",
            "sig_emp_n2.5",
            "sig_emp_inf"
        ]
    );
    assert_eq!(rows.len(), 200);
    let out = rheokit(&["compare", "--preset", "fig6", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(rheokit(&["compare", "--n", "-1"]).status.code(), Some(2));
}

#[test]
fn equivalence_report_and_exit_code() {
    let out = rheokit(&["equivalence", "--sigma-a", "1", "--d2", "1", "--d3", "1"]);
    assert!(out.status.success());
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["mapped"], serde_json::json!({"sigma_a": 2.0, "D2": 2.0, "D3": 2.0}));
    assert!(r["rigorous_max_deviation"].as_f64().unwrap() < 1e-10);
    assert_eq!(r["rigorous_equivalent"], true);
    let gap =
        r["empirical"].as_array().unwrap().iter().find(|p| p["eps"] == 1.0).unwrap()["deviation"].as_f64().unwrap();
    assert!((gap - 1.0 / 6.0).abs() < 1e-12);
    assert_eq!(rheokit(&["equivalence", "--sigma-a", "-1"]).status.code(), Some(2));
}

#[test]
fn simulate_scenarios() {
    let dir = TempDir::new().unwrap();
    let relax = write(
        &dir,
        "r.json",
        r#"{"E": 1, "elements": [{"kind": "dashpot", "D": 1}], "drive": [{"t_end": 1, "eps": 0}], "e_el0": 1}"#,
    );
    let (h, rows) = table(&rheokit(&["simulate", "--model", path(&relax), "--dt", "1e-4", "--t-end", "1"]));
    assert_eq!(h, ["t", "eps", "e_el", "sigma"]);
    let last = rows.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert!((last[3] - (-1.0f64).exp()).abs() < 1e-3);

    let zero = write(
        &dir,
        "z.json",
        r#"{"E": 3, "elements": [{"kind": "huber", "sigma_a": 1, "D": 1}], "drive": [{"t_end": 2, "eps": 0}]}"#,
    );
    let (_, rows) = table(&rheokit(&["simulate", "--model", path(&zero), "--dt", "0.01", "--t-end", "2"]));
    assert!(rows.iter().all(|r| r[1] == 0.0 && r[2] == 0.0 && r[3] == 0.0));

    let ramp: Vec<String> =
        (1..=20).map(|k| format!(r#"{{"t_end": {}, "eps": {}}}"#, 0.1 * k as f64, 0.5 * k as f64)).collect();
    let yield_doc = format!(
        r#"{{"E": 10, "elements": [{{"kind": "huber", "sigma_a": 0.7, "D": 2}}], "drive": [{}]}}"#,
        ramp.join(",")
    );
    let y = write(&dir, "y.json", &yield_doc);
    let (_, rows) = table(&rheokit(&["simulate", "--model", path(&y), "--dt", "1e-3", "--t-end", "2"]));
    let peak = rows.iter().map(|r| r[3].abs()).fold(0.0, f64::max);
    assert!(peak <= 0.7 && peak > 0.69, "{peak}");
}

#[test]
fn conjugate_examples() {
    let dir = TempDir::new().unwrap();
    let huber = write(&dir, "h.json", r#"{"node": "leaf", "potential": {"kind": "huber", "sigma_a": 1, "D": 1}}"#);
    let out = rheokit(&["conjugate", "--model", path(&huber), "--sigma-max", "2", "--samples", "9"]);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.lines().last().unwrap().ends_with(",inf"));
    let (h, rows) = table(&out);
    assert_eq!(h, ["sigma", "zeta_star"]);
    for r in &rows {
        let want = if r[0] <= 1.0 { 0.5 * r[0] * r[0] } else { f64::INFINITY };
        assert_eq!(r[1], want, "{r:?}");
    }

    let dash = write(&dir, "d.json", r#"{"node": "leaf", "potential": {"kind": "dashpot", "D": 2}}"#);
    let (_, rows) = table(&rheokit(&["conjugate", "--model", path(&dash), "--sigma-max", "4", "--samples", "5"]));
    assert!(rows.iter().all(|r| (r[1] - 0.25 * r[0] * r[0]).abs() < 1e-15));

    let plastic = write(&dir, "p.json", r#"{"node": "leaf", "potential": {"kind": "plastic", "sigma_a": 1}}"#);
    let (_, rows) = table(&rheokit(&["conjugate", "--model", path(&plastic), "--sigma-max", "2", "--samples", "5"]));
    assert!(rows.iter().all(|r| r[1] == if r[0] <= 1.0 { 0.0 } else { f64::INFINITY }));
}

#[test]
fn dump_model_round_trips() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "m.json",
        r#"{"node": "parallel", "children": [
            {"node": "serial", "children": [
                {"node": "leaf", "potential": {"kind": "plastic", "sigma_a": 1.5}},
                {"node": "leaf", "potential": {"kind": "powerlaw", "D": 2, "n": 0.5}}]},
            {"node": "leaf", "potential": {"kind": "huber", "sigma_a": 1, "D": 3}}]}"#,
    );
    let first = rheokit(&["curve", "--model", path(&m), "--dump-model"]);
    assert!(first.status.success());
    let again = write(&dir, "again.json", std::str::from_utf8(&first.stdout).unwrap());
    let second = rheokit(&["curve", "--model", path(&again), "--dump-model"]);
    assert_eq!(first.stdout, second.stdout);
    let a = rheokit(&["curve", "--model", path(&m)]);
    let b = rheokit(&["curve", "--model", path(&again)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn infinite_exponent_token_in_documents() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"node": "leaf", "potential": {"kind": "powerlaw", "D": 2, "n": "inf"}}"#);
    let out = rheokit(&["curve", "--model", path(&m), "--dump-model"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["potential"], serde_json::json!({"kind": "plastic", "sigma_a": 2.0}));
    let bad =
        write(&dir, "bad.json", r#"{"node": "leaf", "potential": {"kind": "powerlaw", "D": 2, "n": "infinity"}}"#);
    assert_eq!(rheokit(&["curve", "--model", path(&bad)]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_2_with_field_paths() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", &SERIAL_DASHPOT_PLASTIC.replace(r#""D": 1"#, r#""D": 0"#));
    let out = rheokit(&["curve", "--model", path(&m)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.children[0].potential.D"));

    let missing = dir.path().join("nope.json");
    assert_eq!(rheokit(&["curve", "--model", path(&missing)]).status.code(), Some(2));
    let good = write(&dir, "g.json", SERIAL_DASHPOT_PLASTIC);
    assert_eq!(rheokit(&["curve", "--model", path(&good), "--eps-min", "2", "--eps-max", "1"]).status.code(), Some(2));
    assert_eq!(rheokit(&["curve", "--model", path(&good), "--samples", "1"]).status.code(), Some(2));
    assert_eq!(rheokit(&["conjugate", "--model", path(&good)]).status.code(), Some(2));
    let unwritable = dir.path().join("no/such/dir.csv");
    assert_eq!(rheokit(&["curve", "--model", path(&good), "--out", path(&unwritable)]).status.code(), Some(2));
    assert_eq!(rheokit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn solver_failures_exit_3() {
    let dir = TempDir::new().unwrap();
    let sim = write(
        &dir,
        "s.json",
        r#"{"E": 1, "elements": [{"kind": "dashpot", "D": 1}], "drive": [{"t_end": 10, "eps": 1e308}]}"#,
    );
    let out = rheokit(&["simulate", "--model", path(&sim), "--dt", "10", "--t-end", "10"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
