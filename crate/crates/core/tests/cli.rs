use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ehankel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ehankel"))
        .args(args)
        .env_remove("MODFORMS_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ehankel-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn expand_delta_exact_output() {
    let o = ehankel(&["expand", "--series", "delta", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"coeffs\":[\"0\",\"1\",\"-24\",\"252\",\"-1472\"],\"order\":5,\"var\":\"q\"}\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    for args in [
        &["frobnicate"][..],
        &["expand", "--series", "delta", "--bogus"],
        &["expand", "--series", "nope", "--order", "8"],
        &["verify", "--id", "3.8"],
        &["det", "--spec", "hankel:0"],
        &["classify", "--matrix", "4,8;8"],
        &["--order", "2", "jacobi", "--m", "2"],
    ] {
        let o = ehankel(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let o = ehankel(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("discover"));
}

#[test]
fn failing_verification_exits_one_with_report() {
    let o = ehankel(&["verify", "--id", "3.8:printed", "--m", "2", "--order", "20"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v[0]["pass"], false);
    assert_eq!(v[0]["informational"], true);
    assert_eq!(v[0]["first_mismatch"], 3);

    let o = ehankel(&["verify", "--id", "3.8:z2m", "--m", "2", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)[0]["pass"], true);
}

#[test]
fn verify_all_is_complete_and_deterministic() {
    let args = ["verify", "--id", "all", "--order", "64", "--mode", "both"];
    let first = ehankel(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let v = json(&first);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 75);
    let catalog: Vec<&Value> = reports.iter().filter(|r| r["constant"].is_string() || r["id"] == "1.5").collect();
    assert_eq!(catalog.len(), 44);
    assert!(catalog.iter().all(|r| r["pass"] == true));
    for r in reports {
        if r["pass"] == false {
            assert_eq!(r["informational"], true, "{r}");
        }
    }
    let second = ehankel(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn text_output() {
    let o = ehankel(&["--output", "text", "verify", "--id", "2.6", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2.6 "));
    assert!(stdout(&o).contains("PASS"));

    let o = ehankel(&["--output", "text", "discover", "--n", "2", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Delta^1"));
}

#[test]
fn discover_three_matches_cataloged_constant() {
    let o = ehankel(&["discover", "--n", "3", "--order", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["printed_constant"], "-691/746496000");
    assert_eq!(v["reconstructed"], true);
}

#[test]
fn det_both_modes_agree_on_leading_term() {
    let o = ehankel(&["det", "--spec", "hankel:2", "--order", "6", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["weight"], 12);
    assert_eq!(v["series"]["coeffs"][1], "1728");
    let poly = v["poly"].as_array().unwrap();
    assert_eq!(poly.len(), 2);
}

#[test]
fn classify_recovers_minor() {
    let o = ehankel(&["classify", "--matrix", "4,12;6,14"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["constant_weight"], true);
    assert_eq!(v["weight"], "18");
    assert_eq!(v["hankel_minor"]["rows"], serde_json::json!([1, 2]));
    assert_eq!(v["hankel_minor"]["cols"], serde_json::json!([1, 5]));

    let o = ehankel(&["classify", "--matrix", "1,2;3,5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["constant_weight"], false);
    assert_eq!(v["hankel_minor"], Value::Null);
}

#[test]
fn reduce_reads_series_files() {
    let dir = scratch_dir("reduce");
    let o = ehankel(&["expand", "--series", "E10", "--order", "16"]);
    let file = dir.join("e10.json");
    std::fs::write(&file, &o.stdout).unwrap();
    let o = ehankel(&["reduce", "--weight", "10", "--series", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"poly\":[{\"a\":1,\"b\":1,\"c\":\"1\"}],\"weight\":10}\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn series_cache_round_trip() {
    let dir = scratch_dir("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ehankel"))
            .args(["expand", "--series", "E6", "--order", "12"])
            .env("MODFORMS_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let fresh = run();
    assert_eq!(fresh.status.code(), Some(0));
    let cached = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(cached, 1);
    let again = run();
    assert_eq!(fresh.stdout, again.stdout);
    let uncached = ehankel(&["expand", "--series", "E6", "--order", "12"]);
    assert_eq!(fresh.stdout, uncached.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn jacobi_coefficients() {
    let o = ehankel(&["jacobi", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"m\":1,\"ns2\":[\"1/3\",\"1/3\"]}\n");
}
