use std::process::{Command, Output};

use serde_json::Value;

fn biserial(args: &[&str], out_dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biserial"))
        .args(args)
        .env("BISERIAL_OUTPUT_DIR", out_dir)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn defring_of_a_simple_module() {
    let dir = tempfile::tempdir().unwrap();
    let o = biserial(&["defring", "--module", "1_0", "--field", "7"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["tag"], "k_mod_t2");
    assert_eq!(v["result"]["tangent_dim"], 1);
    let saved: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("defring.json")).unwrap()).unwrap();
    assert_eq!(saved, v);
}

#[test]
fn stable_end_of_a_p_band() {
    let dir = tempfile::tempdir().unwrap();
    let o = biserial(&["hom", "--from", "band:p:mu=3", "--to", "band:p:mu=3", "--stable", "--field", "7"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["stable_end"], 1);
}

#[test]
fn check_plus_rejects_xy() {
    let dir = tempfile::tempdir().unwrap();
    let o = biserial(&["type0", "check-plus", "XY"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["check_plus"], false);
    let o = biserial(&["type0", "check-plus", "XYX"], dir.path());
    assert_eq!(json(&o)["result"]["check_plus"], true);
}

#[test]
fn ar_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let o = biserial(&["ar", "--module", "str: al", "--radius", "2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["component"], "three_tube");
    let dot = std::fs::read_to_string(dir.path().join("ar.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn usage_errors_exit_two_and_name_the_token() {
    let dir = tempfile::tempdir().unwrap();
    let o = biserial(&["module", "--module", "str: be al- zz"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zz"));
    let o = biserial(&["module", "--module", "band:p:mu=0", "--field", "7"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu=0"));
    let o = biserial(&["strings", "--field", "15"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("15"));
    assert_eq!(biserial(&["bogus"], dir.path()).status.code(), Some(2));
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.conf");
    std::fs::write(&cfg, "max_string_len = 3\nmax_type0_len = 3\nmax_band_len = 2\n").unwrap();
    let args = ["--config", cfg.to_str().unwrap(), "verify", "--only", "1,2,4,10"];
    let a = biserial(&args, dir.path());
    let b = biserial(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["field_p"], 7);
    assert_eq!(v["result"]["verdict"], "pass");
    assert_eq!(v["result"]["bounds"]["field_p"], 7);
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 4);
}

#[test]
fn syzygy_orbit_of_a_p_band() {
    let dir = tempfile::tempdir().unwrap();
    let o = biserial(&["syzygy", "--module", "band:p:mu=3", "--steps", "1", "--field", "7"], dir.path());
    let v = json(&o);
    let orbit = v["result"]["orbit"].as_array().unwrap();
    assert_eq!(orbit.len(), 2);
    assert_eq!(orbit[1]["identified"]["kind"], "band");
}
