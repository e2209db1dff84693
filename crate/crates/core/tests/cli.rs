use std::process::{Command, Output};

fn gabor_zak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gabor-zak"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn catalog_lists_every_generator() {
    let out = gabor_zak(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for id in ["chi01", "gaussian", "twisted_chi", "blt_counterexample", "sum_with_fourier"] {
        assert!(text.lines().any(|l| l.starts_with(&format!("{id},"))), "{id} missing");
    }
}

#[test]
fn chi01_bounds_are_one() {
    let out = gabor_zak(&["bounds", "--generator", "chi01"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["A"].as_f64(), Some(1.0));
    assert_eq!(v["B"].as_f64(), Some(1.0));
    assert_eq!(v["riesz_basis"].as_bool(), Some(true));
}

#[test]
fn strict_sweep_past_nyquist_exits_two() {
    let args = ["sweep", "--generator", "gaussian", "--t", "32", "--m", "64", "--strict"];
    let out = gabor_zak(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation"));
    let loose = gabor_zak(&args[..args.len() - 1]);
    assert_eq!(loose.status.code(), Some(0));
    assert!(stdout(&loose).lines().any(|l| l.ends_with(",freq")));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(gabor_zak(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(gabor_zak(&["catalog", "--nope"]).status.code(), Some(64));
    assert_eq!(gabor_zak(&[]).status.code(), Some(64));
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(gabor_zak(&["bounds", "--generator", "nope"]).status.code(), Some(1));
    assert_eq!(gabor_zak(&["zak", "--mx", "100"]).status.code(), Some(1));
    // The Gaussian's Zak transform vanishes at (1/2, 1/2).
    let hyp = gabor_zak(&["argjump", "--generator", "gaussian", "--k", "8", "--n", "8", "--base-x", "0", "--base-y", "0"]);
    assert_eq!(hyp.status.code(), Some(1));
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# bounds run\ngenerator = gaussian\nformat=csv\nmx=64\nny=64\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = gabor_zak(&["bounds", "--config", cfg]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("A,B,method"));
    assert!(text.contains(",gaussian,64,64,"));
    let flagged = gabor_zak(&["bounds", "--config", cfg, "--format", "json", "--generator", "chi01"]);
    assert!(stdout(&flagged).starts_with("{\"A\":1.0000000000000000e0"));
}

#[test]
fn seeded_argjump_is_reproducible() {
    let args = ["argjump", "--generator", "twisted_chi", "--trials", "20", "--seed", "7"];
    let a = gabor_zak(&args);
    let b = gabor_zak(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 20);
    assert!(lines.iter().all(|v| v["jump"].as_f64().unwrap() > 0.125));
    let other = gabor_zak(&["argjump", "--generator", "twisted_chi", "--trials", "20", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prop41.csv");
    let out = gabor_zak(&["prop41", "--kmax", "10", "--n-min", "4", "--n-max", "6", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,R_n,tail_at_Rn,fitted_C,moment_partial");
    assert_eq!(lines.len(), 4);
}

#[test]
fn jumpset_reports_measure() {
    let out = gabor_zak(&["jumpset", "--generator", "chi01"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let m = v["measure"].as_f64().unwrap();
    assert!((m - 0.1049).abs() < 0.002, "{m}");
}

#[test]
fn zak_csv_has_one_row_per_node() {
    let out = gabor_zak(&["zak", "--generator", "gaussian", "--mx", "16", "--ny", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("m,l,re,im"));
    assert_eq!(text.lines().count(), 1 + 16 * 8);
}

#[test]
fn pq_sweep_l2_matches_sweep() {
    let common = ["--generator", "gaussian", "--t", "16", "--m", "64", "--rs", "1,2", "--ls", "1,4"];
    let pq = gabor_zak(&[&["pq-sweep"], &common[..]].concat());
    let main = gabor_zak(&[&["sweep"], &common[..]].concat());
    let col = |text: String, i: usize| -> Vec<f64> {
        text.lines().skip(1).map(|l| l.split(',').nth(i).unwrap().parse().unwrap()).collect()
    };
    let a = col(stdout(&pq), 4);
    let b = col(stdout(&main), 4);
    assert_eq!(a.len(), 4);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-12);
    }
}
