use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nearly::oracle::{mutate, mutation_catalogue};
use nearly::principles::Certificate;
use nearly::scenario::Scenario;
use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(format!("{name}.json"))
}

fn nearly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearly")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn certificate(doc: &str) -> Certificate {
    let v: Value = serde_json::from_str(doc).unwrap();
    Certificate::from_json(&v["certificate"].to_string()).unwrap()
}

#[test]
fn egoroff_run_verifies_and_records_nu_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spike.json");
    let res = nearly(&[
        "run",
        scenario("ramp_spike_egoroff").to_str().unwrap(),
        "--epsilon",
        "1/10",
        "--ladder",
        "4",
        "--verify",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0, "{}", stderr(&res));
    let doc = std::fs::read_to_string(&out).unwrap();
    let Certificate::Egoroff(c) = certificate(&doc) else { panic!("not an Egoroff certificate") };
    assert_eq!(c.nu(2), 41);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("spike.report.json")).unwrap()).unwrap();
    let cert_doc: Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(report["run_id"], cert_doc["run_id"]);
    assert_eq!(report["report"]["verdict"], "pass");
}

#[test]
fn infinite_on_positive_measure_is_an_input_error() {
    let res = nearly(&["run", scenario("infinite_on_half").to_str().unwrap()]);
    assert_eq!(code(&res), 2);
    let err = stderr(&res);
    assert!(err.contains("not finite almost everywhere"), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1);
}

#[test]
fn iteration_cap_exits_3() {
    let res = nearly(&["run", scenario("ramp_spike_egoroff").to_str().unwrap(), "--cap", "10"]);
    assert_eq!(code(&res), 3, "{}", stderr(&res));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(code(&nearly(&["run", "no/such/file.json"])), 2);
    assert_eq!(code(&nearly(&["run", scenario("reciprocal_bound").to_str().unwrap(), "--epsilon", "-1/2"])), 2);
    assert_eq!(code(&nearly(&["run", scenario("reciprocal_bound").to_str().unwrap(), "--csv", "x"])), 2);
}

#[test]
fn mutated_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = scenario("ramp_spike_egoroff");
    let run = nearly(&["run", path.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let cert = certificate(&String::from_utf8(run.stdout).unwrap());

    let good = dir.path().join("good.json");
    std::fs::write(&good, cert.to_json()).unwrap();
    assert_eq!(code(&nearly(&["verify", "--scenario", path.to_str().unwrap(), "--cert", good.to_str().unwrap()])), 0);

    let sc = Scenario::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let inputs = sc.inputs().unwrap();
    for m in mutation_catalogue(&cert) {
        let Some(bad) = mutate(&cert, m, &inputs) else { continue };
        let file = dir.path().join("bad.json");
        std::fs::write(&file, bad.to_json()).unwrap();
        let res = nearly(&["verify", "--scenario", path.to_str().unwrap(), "--cert", file.to_str().unwrap()]);
        assert_eq!(code(&res), 1, "{m:?} survived");
    }
}

#[test]
fn every_scenario_runs_and_verifies() {
    for name in [
        "reciprocal_bound",
        "ramp_spike_egoroff_dini",
        "step_lusin",
        "x_over_n_dini",
        "open_set_decompose",
        "dyadic_of_ramp",
    ] {
        let res = nearly(&["run", scenario(name).to_str().unwrap(), "--verify"]);
        assert_eq!(code(&res), 0, "{name}: {}", stderr(&res));
        assert!(stderr(&res).contains("pass"), "{name}");
    }
}

#[test]
fn certificates_round_trip_and_are_deterministic() {
    for name in ["reciprocal_bound", "ramp_spike_egoroff", "step_lusin", "x_over_n_dini", "open_set_decompose"] {
        let path = scenario(name);
        let a = nearly(&["run", path.to_str().unwrap()]).stdout;
        let b = nearly(&["run", path.to_str().unwrap()]).stdout;
        assert_eq!(a, b, "{name}");
        let text = String::from_utf8(a).unwrap();
        let cert = certificate(&text);
        assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
        // exact rationals only
        let body = serde_json::from_str::<Value>(&text).unwrap()["certificate"].to_string();
        assert!(!body.contains('.'), "{name}: {body}");
    }
}

#[test]
fn run_id_tracks_flags() {
    let path = scenario("reciprocal_bound");
    let id = |extra: &[&str]| {
        let mut args = vec!["run", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        let v: Value = serde_json::from_slice(&nearly(&args).stdout).unwrap();
        v["run_id"].as_str().unwrap().to_string()
    };
    assert_eq!(id(&[]), id(&[]));
    assert_ne!(id(&[]), id(&["--epsilon", "1/100"]));
}

#[test]
fn decay_tables() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("csv");
    let res = nearly(&["run", scenario("ramp_spike_egoroff").to_str().unwrap(), "--ladder", "3", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", stderr(&res));
    let m2 = std::fs::read_to_string(csv.join("tail_m2.csv")).unwrap();
    // m(E ∖ E_{n,2}) = (1 - 1/2)/n
    let rows: Vec<&str> = m2.lines().collect();
    assert_eq!(rows[..4], ["n,value", "1,1/2", "2,1/4", "3,1/6"]);
    assert_eq!(rows.len(), 41 + 1);
    assert!(csv.join("tail_m3.csv").exists() && !csv.join("tail_m4.csv").exists());

    let res = nearly(&["run", scenario("x_over_n_dini").to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    let sup = std::fs::read_to_string(csv.join("sup.csv")).unwrap();
    assert_eq!(sup.lines().nth(11), Some("11,1/11"));
}

#[test]
fn demo_passes_and_reacts_to_mutation() {
    let res = nearly(&["demo"]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stdout));
    let text = String::from_utf8(res.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("ok")).count(), 5);

    assert_eq!(code(&nearly(&["demo", "--grid-density", "1/64"])), 0);
    assert_eq!(code(&nearly(&["demo", "--inject-mutation"])), 1);
}

#[test]
fn version_flag() {
    let res = nearly(&["--version"]);
    assert_eq!(code(&res), 0);
    assert!(String::from_utf8(res.stdout).unwrap().starts_with("nearly "));
}
