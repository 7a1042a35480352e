use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_koszulab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scenario_file(tag: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("koszulab-cli-{tag}-{}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn koszul_n2_json_matches_golden() {
    let out = run(&["run", "--builtin", "koszul-n2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("koszul-n2.json"));
}

#[test]
fn golden_content_is_the_expected_homology() {
    let v: serde_json::Value = serde_json::from_str(&golden("koszul-n2.json")).unwrap();
    assert_eq!(v["schema"], "koszulab-report/1");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["scenario"]["degree_bound"], 3);
    let h0 = v["fingerprints"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["check"] == "thm5" && f["complex"] == "truncated-koszul" && f["position"] == "H̄_0")
        .unwrap();
    assert_eq!(h0["oracle_hilbert"], serde_json::json!([1, 0, 0, 0]));
    assert_eq!(h0["gb_hilbert"], h0["oracle_hilbert"]);
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["run", "--builtin", "koszul-n4", "--format", "json", "--checks", "invariants,cor3"]);
    let b = run(&["run", "--builtin", "koszul-n4", "--format", "json", "--checks", "invariants,cor3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scenario_file_with_out_path() {
    let sc = scenario_file("ok", r#"{"variables":["X","Y"],"psi":[["X","Y"]],"chi":["-Y","X"],"degree_bound":3}"#);
    let out_path = std::env::temp_dir().join(format!("koszulab-cli-out-{}.json", std::process::id()));
    let out = bin()
        .args(["run", "--format", "json", "--scenario"])
        .arg(&sc)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    let _ = std::fs::remove_file(sc);
    let _ = std::fs::remove_file(out_path);
}

#[test]
fn text_format_has_the_table() {
    let out = run(&["run", "--builtin", "koszul-n2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: pass"));
    assert!(text.contains("H̄_0"));
    assert!(text.contains("engine/oracle agreement: true"));
}

#[test]
fn refusal_exits_two() {
    let sc = scenario_file("refuse", r#"{"variables":["X","Y"],"psi":[["X","X"]],"chi":["X","-X"]}"#);
    let out = bin().args(["run", "--scenario"]).arg(&sc).output().unwrap();
    let _ = std::fs::remove_file(sc);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("status: refused"));
}

#[test]
fn failing_check_exits_one() {
    // χ = 0 lies in I_M, so it is admissible but has grade 0 < 2; the
    // homology predictions then fail.
    let sc = scenario_file("fail", r#"{"variables":["X","Y"],"psi":[["X","Y"]],"chi":["0","0"],"degree_bound":2}"#);
    let out = bin().args(["run", "--format", "json", "--scenario"]).arg(&sc).output().unwrap();
    let _ = std::fs::remove_file(sc);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
}

#[test]
fn input_errors_exit_three() {
    let sc = scenario_file("syntax", "{\n  \"variables\": [\"X\"],\n  oops\n}");
    let out = bin().args(["run", "--scenario"]).arg(&sc).output().unwrap();
    let _ = std::fs::remove_file(sc);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));

    let sc = scenario_file("poly", r#"{"variables":["X","Y"],"psi":[["X","Q"]],"chi":["-Y","X"]}"#);
    let out = bin().args(["run", "--scenario"]).arg(&sc).output().unwrap();
    let _ = std::fs::remove_file(sc);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("psi[0][1]"));

    let out = run(&["run", "--builtin", "nope"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["run", "--builtin", "koszul-n2", "--checks", "thm5,bogus"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn list_builtins_names_all() {
    let out = run(&["list-builtins"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["koszul-n2", "koszul-n4", "koszul-n6", "generic-2x4", "hilbert-burch-r1"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn empty_check_list_runs_nothing() {
    let out = run(&["run", "--builtin", "koszul-n2", "--format", "json", "--checks", ""]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().is_empty());
}
