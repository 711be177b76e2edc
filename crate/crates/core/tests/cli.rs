use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamming-revival"))
        .args(args)
        .env_remove("REVIVAL_MAX_M")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn csv_rows(o: &Output) -> Vec<Vec<f64>> {
    stdout(o)
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn verify_balanced_case() {
    let o = run(&["verify", "--N", "4", "--alpha", "2", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["certificate"]["kind"], "balanced_FR");
    assert!(stdout(&o).contains("\"tau_fr\": 0.7853981633974483"));
    assert_eq!(v["params"]["p"], 1);
    assert_eq!(v["params"]["q"], 1);
    let mu = v["numeric"]["mu"].as_array().unwrap();
    assert!((mu[0].as_f64().unwrap().powi(2) - 0.5).abs() < 1e-9);
    assert!(v["appendix"]["max_identity_dev"].as_f64().unwrap() < 1e-10);
    assert!(v["appendix"]["delta"].is_number() && v["appendix"]["phi_prime"].is_number());
}

#[test]
fn verify_uncertified_case_reports_scan() {
    let o = run(&["verify", "--N", "5", "--alpha", "2", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["certificate"]["kind"], "none");
    assert!(v["appendix"].is_null());
    let scan = &v["numeric"]["scan"];
    assert_eq!(scan["passed"], true);
    assert!(scan["balanced_hits"].as_array().unwrap().is_empty());
}

#[test]
fn verify_exact_ratio_and_pst_only() {
    let o = run(&["verify", "--N", "4", "--p", "2", "--q", "1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["certificate"]["kind"], "PST_only");
    let tau = v["certificate"]["tau_pst"].as_f64().unwrap();
    assert!((tau - std::f64::consts::PI).abs() < 1e-15);
    assert_eq!(v["numeric"]["pst"]["passed"], true);
}

#[test]
fn verify_rejects_zero_weights() {
    let o = run(&["verify", "--N", "3", "--alpha", "0", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(α, β) ≠ (0, 0) required"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--alpha", "1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--N", "1", "--alpha", "1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--N", "4", "--alpha", "1", "--p", "1", "--q", "2"]).status.code(), Some(1));
    assert_eq!(run(&["evolve", "--N", "4", "--alpha", "1", "--tau", "later"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--N", "4", "--alpha", "1", "--json", "--csv"]).status.code(), Some(1));
}

#[test]
fn evolve_graph_at_fr_time() {
    let o = run(&["evolve", "--N", "4", "--alpha", "2", "--beta", "2", "--tau", "fr", "--target", "graph"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("index,re,im,probability\n"));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 8);
    for r in &rows {
        let expected = if r[0] == 0.0 || r[0] == 7.0 { 0.5 } else { 0.0 };
        assert!((r[3] - expected).abs() < 1e-9, "{r:?}");
    }
}

#[test]
fn evolve_chain_transfers_to_last_site() {
    let o = run(&["evolve", "--N", "3", "--alpha", "0", "--beta", "1", "--tau", "3.141592653589793", "--target", "chain"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&o);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), vec![1.0, 2.0, 3.0]);
    assert!((rows[2][3] - 1.0).abs() < 1e-9);
}

#[test]
fn evolve_both_reports_comparison() {
    let o = run(&["evolve", "--N", "5", "--alpha", "0.7", "--beta", "-1.2", "--tau", "2.5", "--target", "both", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["chain"].as_array().unwrap().len(), 5);
    assert_eq!(v["graph"].as_array().unwrap().len(), 16);
    assert!(v["comparison"]["max_deviation"].as_f64().unwrap() < 1e-10);
}

#[test]
fn evolve_fr_without_certificate() {
    let o = run(&["evolve", "--N", "5", "--alpha", "2", "--beta", "2", "--tau", "fr"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no FR time exists for these parameters"));
}

#[test]
fn evolve_respects_size_guard() {
    let o = run(&["evolve", "--N", "28", "--alpha", "1", "--beta", "1", "--tau", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scan_rows() {
    let o = run(&["scan", "--N", "4", "--alpha", "2", "--beta", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("tau,p_corner,p_antipode,leakage\n"));
    assert!(!text.contains('\r'));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 2001);
    assert_eq!(rows[0], vec![0.0, 1.0, 0.0, 0.0]);
    let fr = rows
        .iter()
        .find(|r| (r[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-12)
        .expect("row at pi/4");
    assert!((fr[1] - 0.5).abs() < 1e-9 && (fr[2] - 0.5).abs() < 1e-9);

    let o = run(&["scan", "--N", "3", "--alpha", "0", "--beta", "1"]);
    let rows = csv_rows(&o);
    let pst = rows
        .iter()
        .find(|r| (r[0] - std::f64::consts::PI).abs() < 1e-12)
        .expect("row at pi");
    assert!((pst[2] - 1.0).abs() < 1e-9);
}

#[test]
fn scan_rejects_empty_range() {
    let o = run(&["scan", "--N", "3", "--alpha", "1", "--tau-min", "2", "--tau-max", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["scan", "--N", "3", "--alpha", "1", "--steps", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn quotient_and_appendix_commands() {
    let o = run(&["quotient", "--N", "7", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["all_exact"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    assert_eq!(v["equivalence"].as_array().unwrap().len(), 10);
    assert_eq!(run(&["quotient", "--N", "7", "--seed", "3"]).stdout, o.stdout);

    let o = run(&["appendix", "--N", "5", "--alpha", "1", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["appendix"]["passed"], true);
    let o = run(&["appendix", "--N", "4", "--alpha", "1", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("hamming-revival-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let o = run(&["scan", "--N", "3", "--alpha", "1", "--steps", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_round_trip_is_deterministic() {
    let first = run(&["verify", "--N", "6", "--alpha", "-1.5", "--beta", "0.75"]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let v = json(&first);
    let p = &v["params"];
    let (n, a, b) = (p["N"].to_string(), p["alpha"].to_string(), p["beta"].to_string());
    let second = run(&["verify", "--N", &n, "--alpha", &a, "--beta", &b]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(json(&second), v);
}
