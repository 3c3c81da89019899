use std::path::Path;
use std::process::{Command, Output};

use permci::codes::CodeFile;
use permci::coherent::{coherent_information, Formula};
use permci::{ChannelKind, ChannelSpec};
use serde_json::Value;

fn permci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permci"))
        .args(args)
        .env_remove("PERMCI_SEED")
        .env_remove("PERMCI_THREADS")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = permci(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Data rows of a CSV file, without the version line and header.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# permci-csv v1"));
    lines.next().expect("header");
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn eval_reproduces_the_damping_dephasing_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eval.json");
    let csv = dir.path().join("eval.csv");
    ok(&["eval", "--code", "bundled:damping_dephasing", "--out", path(&out), "--csv", path(&csv)]);
    let report = json(&out);
    let per_use = report["per_use"].as_f64().unwrap();
    assert!(relative(per_use, 1.2171e-2) < 1e-4, "{per_use}");
    assert_eq!(report["formula"], "purified");
    let weights: f64 = report["terms"].as_array().unwrap().iter().map(|t| t["weight"].as_f64().unwrap()).sum();
    assert!((weights - 1.0).abs() < 1e-9);
    let rows = csv_rows(&std::fs::read_to_string(&csv).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][6].parse::<f64>().unwrap(), per_use);
}

#[test]
fn eval_of_the_network_state_uses_brute_force() {
    let stdout = ok(&["eval", "--code", "bundled:dd_network"]);
    assert!(stdout.contains("formula  brute"));
    let per_use: f64 = stdout.lines().find_map(|l| l.strip_prefix("per_use  ")).unwrap().trim().parse().unwrap();
    assert!(relative(per_use, 2.0046e-2) < 1e-4);
}

#[test]
fn single_use_of_a_noiseless_channel_on_a_pure_code_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.json");
    std::fs::write(
        &code,
        r#"{"n": 1, "k": 1, "weights": [1.0],
            "states": [{"form": "bloch", "r": [0.0, 0.6, 0.8], "pure": true}]}"#,
    )
    .unwrap();
    let out = dir.path().join("eval.json");
    ok(&["eval", "--code", path(&code), "--channel", "identity", "--out", path(&out)]);
    assert!(json(&out)["total"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn malformed_code_files_are_reported_with_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("bad.json");
    std::fs::write(&code, "{\n  \"n\": 3,\n  \"k\": 1,\n  \"weights\": [1.0],\n  \"stats\": []\n}\n").unwrap();
    let out = permci(&["eval", "--code", path(&code), "--channel", "bb84", "--params", "0.1"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5"), "{err}");

    std::fs::write(&code, r#"{"n": 3, "k": 1, "weights": [0.9], "states": [{"form": "bloch", "r": [0, 0, 1]}]}"#).unwrap();
    let out = permci(&["eval", "--code", path(&code), "--channel", "bb84", "--params", "0.1"]);
    assert!(!out.status.success());
}

#[test]
fn optimize_is_deterministic_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let code = dir.path().join(name);
        ok(&[
            "optimize", "--channel", "gadc", "--params", "0.44035,0.1", "--n", "4", "--k", "2", "--swarm-size", "12",
            "--iterations", "30", "--seed", "99", "--threads", threads, "--save-code", path(&code),
        ]);
        std::fs::read(code).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "1");
    let c = run("c.json", "2");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn seed_from_the_environment_matches_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let args = |code: &Path| {
        vec![
            "optimize".to_string(),
            "--channel=bb84".into(),
            "--params=0.1".into(),
            "--n=3".into(),
            "--swarm-size=8".into(),
            "--iterations=10".into(),
            format!("--save-code={}", code.display()),
        ]
    };
    let flag = dir.path().join("flag.json");
    let mut with_flag = args(&flag);
    with_flag.push("--seed=5".into());
    let refs: Vec<&str> = with_flag.iter().map(String::as_str).collect();
    ok(&refs);

    let env = dir.path().join("env.json");
    let out = Command::new(env!("CARGO_BIN_EXE_permci")).args(args(&env)).env("PERMCI_SEED", "5").output().unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read(flag).unwrap(), std::fs::read(env).unwrap());
}

#[test]
fn single_use_depolarizing_optimum_is_the_hashing_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("opt.json");
    ok(&[
        "optimize", "--channel", "depolarizing", "--params", "0.1", "--n", "1", "--k", "1", "--swarm-size", "20",
        "--iterations", "200", "--seed", "3", "--out", path(&out),
    ]);
    let p = [0.9, 0.1 / 3.0, 0.1 / 3.0, 0.1 / 3.0];
    let hashing = 1.0 + p.iter().map(|x: &f64| x * x.log2()).sum::<f64>();
    let total = json(&out)["total"].as_f64().unwrap();
    assert!((total - hashing).abs() < 1e-8, "{total} vs {hashing}");
}

#[test]
fn optimized_gadc_code_reaches_the_published_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("opt.json");
    let code = dir.path().join("code.json");
    ok(&[
        "optimize", "--channel", "gadc", "--params", "0.44035,0.1", "--n", "9", "--k", "2", "--swarm-size", "40",
        "--iterations", "200", "--restarts", "2", "--seed", "7", "--out", path(&out), "--save-code", path(&code),
    ]);
    let total = json(&out)["total"].as_f64().unwrap();
    assert!(total >= 9.0 * 8.8918e-4, "{}", total / 9.0);

    // the saved code evaluates to the reported objective
    let eval = dir.path().join("eval.json");
    ok(&["eval", "--code", path(&code), "--out", path(&eval)]);
    assert!((json(&eval)["total"].as_f64().unwrap() - total).abs() < 1e-12);
}

#[test]
fn code_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    ok(&["codes", "show", "two_pauli", "--out", path(&first)]);
    let file: CodeFile = serde_json::from_str(&std::fs::read_to_string(&first).unwrap()).unwrap();
    let again = serde_json::to_string_pretty(&file).unwrap() + "\n";
    assert_eq!(again, std::fs::read_to_string(&first).unwrap());

    let from_file = dir.path().join("a.json");
    let from_bundle = dir.path().join("b.json");
    ok(&["eval", "--code", path(&first), "--out", path(&from_file)]);
    ok(&["eval", "--code", "bundled:two_pauli", "--out", path(&from_bundle)]);
    assert_eq!(json(&from_file)["total"], json(&from_bundle)["total"]);
}

#[test]
fn codes_list_names_every_bundled_code() {
    let stdout = ok(&["codes", "list"]);
    for id in ["two_pauli", "bb84", "gadc", "damping_dephasing", "dephrasure_q0.4", "dd_k5", "dd_network"] {
        assert!(stdout.lines().any(|l| l.starts_with(id)), "{id}");
    }
}

#[test]
fn snapping_sets_near_half_weights_to_half() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.json");
    let snapped = dir.path().join("snapped.json");
    ok(&["eval", "--code", "bundled:two_pauli", "--out", path(&raw)]);
    ok(&["eval", "--code", "bundled:two_pauli", "--snap-half", "--out", path(&snapped)]);
    let (a, b) = (json(&raw)["per_use"].as_f64().unwrap(), json(&snapped)["per_use"].as_f64().unwrap());
    assert_ne!(a, b);
    assert!(relative(b, a) < 1e-2);
}

#[test]
fn two_pauli_code_stays_positive_for_every_listed_n() {
    let stdout = ok(&["sweep", "--code", "bundled:two_pauli", "--vary", "p", "--values", "0.2271", "--n", "9,12,15,18,21,24"]);
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row[4].parse::<f64>().unwrap() > 0.0, "{row:?}");
    }
}

#[test]
fn damping_dephasing_code_beats_repetition_codes_in_a_window() {
    let stdout = ok(&[
        "sweep", "--code", "bundled:damping_dephasing", "--vary", "g", "--values", "0.2,0.215,0.24,0.26,0.275,0.285",
        "--n", "10", "--baseline-copies", "16",
    ]);
    for row in csv_rows(&stdout) {
        let g: f64 = row[1].parse().unwrap();
        let ours: f64 = row[5].parse().unwrap();
        let repetition: f64 = row[6].parse().unwrap();
        let inside = (0.21..=0.275).contains(&g);
        assert_eq!(ours > repetition, inside, "g = {g}: {ours} vs {repetition}");
    }
}

#[test]
fn dephrasure_sweep_matches_direct_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    ok(&["sweep", "--code", "bundled:dephrasure_q0.3", "--vary", "p", "--from", "0.1", "--to", "0.2", "--steps", "5", "--n", "5,9", "--out", path(&out)]);
    let code = permci::codes::find_bundled("dephrasure_q0.3").unwrap().ensemble().unwrap();
    let rows = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 10);
    for row in rows {
        let p: f64 = row[1].parse().unwrap();
        let n: usize = row[2].parse().unwrap();
        let ch = ChannelSpec::new(ChannelKind::Dephrasure, &[p, 0.3]).build().unwrap();
        let direct = coherent_information(&ch, &code.with_n(n).unwrap(), Formula::Auto).unwrap().total;
        assert_eq!(row[4].parse::<f64>().unwrap(), direct);
    }
}

#[test]
fn threshold_of_the_two_pauli_code_exceeds_the_published_noise() {
    let stdout = ok(&["threshold", "--code", "bundled:two_pauli", "--vary", "p", "--bracket", "0.2,0.3", "--n", "24"]);
    let rows = csv_rows(&stdout);
    assert!(rows[0][2].parse::<f64>().unwrap() > 0.2271);
}

#[test]
fn config_file_drives_a_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    let out = dir.path().join("rows.csv");
    std::fs::write(
        &config,
        format!(
            "n = [3, 4]\ncode = \"bundled:bb84\"\n\n[sweep]\nvary = \"p\"\nvalues = [0.05, 0.1]\n\n[output]\ncsv = \"{}\"\n",
            out.display()
        ),
    )
    .unwrap();
    ok(&["sweep", "--config", path(&config)]);
    assert_eq!(csv_rows(&std::fs::read_to_string(&out).unwrap()).len(), 4);

    std::fs::write(&config, "seed = 1\n[swarm]\nswarm_sise = 3\n").unwrap();
    let bad = permci(&["sweep", "--config", path(&config)]);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));
}

#[test]
fn coarse_simplex_scan() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("simplex.csv");
    ok(&[
        "simplex", "--exponent", "2", "--n", "3", "--phi", "1.5707963267948966", "--swarm-size", "8", "--iterations",
        "20", "--seed", "1", "--out", path(&out),
    ]);
    let rows = csv_rows(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row.len(), 11);
        let q: f64 = row[2..5].iter().map(|x| x.parse::<f64>().unwrap()).sum();
        assert!((q - 1.0).abs() < 1e-12);
    }
}

#[test]
fn oracle_check_passes() {
    let stdout = ok(&["oracle-check", "--trials", "3", "--max-n", "3"]);
    assert!(stdout.lines().all(|l| l.starts_with("PASS")), "{stdout}");
    assert_eq!(stdout.lines().count(), 7 * 3 + 2);
}
