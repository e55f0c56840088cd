use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const WORKED: &str = r#"{
  "curve": {"kind": "reduced_form", "hazard": [{"until": 1.0, "lambda": 0.030459207484708574}]},
  "tranche": {"alpha": 0.1, "beta": 0.2, "t_expiry": 1.0, "payment_dates": [1.0]},
  "pool": {"n": 100},
  "simulation": {"n_paths": 3000, "seed": 11, "mode": "tilted"}
}"#;

fn ldpcdo(args: &[&str]) -> Output {
    ldpcdo_env(args, &[])
}

fn ldpcdo_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ldpcdo"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn price_worked_example() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "w.json", WORKED);
    let v = json(&ldpcdo(&["--config", cfg.to_str().unwrap(), "price"]));
    let prot = v["protection"]["value"].as_f64().unwrap();
    assert!((prot / 3.5528020529e-5 - 1.0).abs() < 1e-9, "{prot}");
    assert_eq!(v["assumptions"]["ig_ok"], true);
    assert_eq!(v["protection"]["granularity"], 0.0);
}

#[test]
fn single_state_mixture_matches_homogeneous() {
    let dir = TempDir::new().unwrap();
    let hom = write(dir.path(), "h.json", WORKED);
    let mix_body = WORKED.replacen('{', r#"{"mixture": {"states": [{"p": 1.0, "f": 0.03}]},"#, 1);
    let mix = write(dir.path(), "m.json", &mix_body);
    let h = json(&ldpcdo(&["--config", hom.to_str().unwrap(), "price"]));
    let m = json(&ldpcdo(&["--config", mix.to_str().unwrap(), "price"]));
    let (hv, mv) = (h["protection"]["value"].as_f64().unwrap(), m["protection"]["value"].as_f64().unwrap());
    // the homogeneous curve carries F(T−) = 0.03 up to rounding of λ
    assert!((hv / mv - 1.0).abs() < 1e-12, "{hv} vs {mv}");
}

#[test]
fn non_investment_grade_exits_three() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "bad.json", &WORKED.replace("\"alpha\": 0.1", "\"alpha\": 0.02"));
    let out = ldpcdo(&["--config", cfg.to_str().unwrap(), "price"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("α>F(T−)"), "{}", stderr(&out));
}

#[test]
fn malformed_config_names_the_field() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "bad.json", &WORKED.replace("\"alpha\": 0.1", "\"alpha\": \"ten percent\""));
    let out = ldpcdo(&["--config", cfg.to_str().unwrap(), "price"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("tranche.alpha"), "{}", stderr(&out));

    let missing = ldpcdo(&["--config", dir.path().join("nope.json").to_str().unwrap(), "price"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn sweep_writes_header_and_rows() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "w.json", WORKED);
    let out = ldpcdo(&["--config", cfg.to_str().unwrap(), "sweep", "--n-from", "100", "--n-to", "200", "--n-step", "10"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N,alpha,beta,f_t_minus,granularity,exponent_nats,value,log10_value");
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("100,"));
}

#[test]
fn simulate_is_reproducible_across_threads() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "w.json", WORKED);
    let run = |threads: &str, name: &str| {
        let csv = dir.path().join(name);
        let out = ldpcdo_env(
            &["--config", cfg.to_str().unwrap(), "simulate", "--csv", csv.to_str().unwrap()],
            &[("LDPCDO_THREADS", threads)],
        );
        assert!(out.status.success(), "{}", stderr(&out));
        let summary: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        (std::fs::read(csv).unwrap(), summary)
    };
    let (a, summary) = run("1", "a.csv");
    let (b, _) = run("4", "b.csv");
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().next(), Some("path,defaults_before_T,prot,prem,weight"));
    assert_eq!(text.lines().count(), 3001);
    assert!(summary["buckets"].is_object());

    let other = ldpcdo(&["--config", cfg.to_str().unwrap(), "--seed", "12", "--paths", "3000", "simulate"]);
    assert_ne!(other.stdout, text.into_bytes());
}

#[test]
fn calibrate_round_trips_into_price() {
    let out = ldpcdo(&["calibrate", "--spread", "0.05", "--dates", "1", "--t-expiry", "1"]);
    let curve = json(&out);
    let lambda = curve["hazard"][0]["lambda"].as_f64().unwrap();
    assert!((lambda - 1.05f64.ln()).abs() < 1e-12, "{lambda}");
    assert!(stderr(&out).contains("lambda ="));

    let dir = TempDir::new().unwrap();
    let body = format!(
        r#"{{"curve": {curve}, "tranche": {{"alpha": 0.1, "beta": 0.2, "t_expiry": 1.0, "payment_dates": "quarterly"}}, "pool": {{"n": 250}}}}"#
    );
    let cfg = write(dir.path(), "c.json", &body);
    let v = json(&ldpcdo(&["--config", cfg.to_str().unwrap(), "price"]));
    let f = v["f_t_minus"].as_f64().unwrap();
    assert!((f - 0.05 / 1.05).abs() < 1e-12);

    let bad = ldpcdo(&["calibrate", "--spread", "-0.05", "--t-expiry", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn quick_verify_reports_the_red_criterion() {
    let out = ldpcdo(&["verify", "--level", "quick"]);
    assert_eq!(out.status.code(), Some(4));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 5, "{text}");
    assert!(stderr(&out).contains("criterion 3"), "{}", stderr(&out));
}
