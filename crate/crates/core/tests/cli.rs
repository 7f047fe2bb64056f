use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_groupsamp"));
    c.env_remove("GROUPSAMP_REPORT_DIR");
    c
}

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.json"))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("groupsamp-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn analyze_exit_codes() {
    let ok = bin().arg("analyze").arg(scenario("identity")).output().unwrap();
    assert_eq!(code(&ok), 0);
    let json: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(json["reports"][0]["diagnostics"]["is_frame"], true);

    let bad = bin().arg("analyze").arg(scenario("nonframe_counterexample")).output().unwrap();
    assert_eq!(code(&bad), 1);
    let json: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(json["reports"][0]["diagnostics"]["delta"].as_f64(), Some(0.0));

    let dir = scratch("malformed");
    let path = dir.join("neg.json");
    let text = std::fs::read_to_string(scenario("identity")).unwrap().replace("[4]", "[-4]");
    std::fs::write(&path, text).unwrap();
    assert_eq!(code(&bin().arg("analyze").arg(&path).output().unwrap()), 2);
    assert_eq!(code(&bin().arg("analyze").output().unwrap()), 2);
}

#[test]
fn roundtrip_is_deterministic() {
    let run = || {
        bin()
            .args(["roundtrip", "--seed", "11"])
            .arg(scenario("finite_index_z8"))
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["reports"][0]["seed"], 11);

    let nf = bin().args(["roundtrip", "--seed", "1"]).arg(scenario("nonframe_counterexample")).output().unwrap();
    assert_eq!(code(&nf), 1);
}

#[test]
fn verify_all_and_fault_mode() {
    let dir = scratch("verify");
    let report = dir.join("all.json");
    let ok = bin().args(["verify", "--all", "--report"]).arg(&report).output().unwrap();
    assert_eq!(code(&ok), 0);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["reports"].as_array().unwrap().len(), 5);

    let fault = bin().args(["verify", "--all", "--inject-fault"]).output().unwrap();
    assert_eq!(code(&fault), 1);
    let json: serde_json::Value = serde_json::from_slice(&fault.stdout).unwrap();
    let li = json["reports"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "left_inverse")
        .unwrap()
        .clone();
    assert_eq!(li["pass"], false);

    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"scenarios": []}"#).unwrap();
    assert_eq!(code(&bin().arg("verify").arg(&empty).output().unwrap()), 2);
}

#[test]
fn report_directory_from_environment() {
    let dir = scratch("envdir");
    let out = bin()
        .env("GROUPSAMP_REPORT_DIR", &dir)
        .arg("analyze")
        .arg(scenario("shannon_z4"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.join("analyze.json")).unwrap();
    assert!(text.contains("\"scenario\": \"shannon_z4\""));
}

#[test]
fn flags_override_the_config() {
    let out = bin()
        .args(["roundtrip", "--left-inverse", "family"])
        .arg(scenario("finite_index_z8"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["reports"][0]["left_inverse"], "family");

    // A huge threshold turns every system into a non-frame.
    let out = bin().args(["analyze", "--tol", "1e6"]).arg(scenario("identity")).output().unwrap();
    assert_eq!(code(&out), 1);
}
