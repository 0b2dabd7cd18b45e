use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn ramdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramdiv")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn ramify_frobenius_p3() {
    let out = ramdiv(&["ramify", "--input", &data("kummer_p3_fx.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "ramify");
    assert_eq!(v["divisor_text"], "2[x]");
    assert_eq!(v["degree"], 2);
}

#[test]
fn ramify_with_infinity() {
    let v = json(&ramdiv(&["ramify", "-i", &data("kummer_p2n2_fx.json"), "--infinity"]));
    assert_eq!(v["divisor_text"], "3[x] + 3[∞]");
    assert_eq!(v["degree"], 6);
}

#[test]
fn degrees_override() {
    let out = ramdiv(&["ramify", "-i", &data("kummer_p2_fx.json"), "--infinity", "--degrees", "0,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["degree"], 2);
}

#[test]
fn rejected_models_exit_2() {
    for name in ["kummer_p2_square.json", "kummer_p2_cusp_affine.json", "cocycle_p2_x3.json", "product_z2z2.json"] {
        let out = ramdiv(&["ramify", "-i", &data(name)]);
        assert_eq!(code(&out), 2, "{name}");
        assert!(json(&out)["error"]["message"].is_string());
    }
}

#[test]
fn assumed_normality_for_products() {
    let out = ramdiv(&["ramify", "-i", &data("product_z2z2.json"), "--assume-normal"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["policy"], "assume");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&ramdiv(&["ramify"])), 1);
    assert_eq!(code(&ramdiv(&["ramify", "-i", "/nonexistent.json"])), 1);
    assert_eq!(code(&ramdiv(&["oracle", "-i", &data("kummer_p3_fx.json"), "--place", "x"])), 1);
    assert_eq!(code(&ramdiv(&["regress-gln", "-p", "4", "-n", "1", "--beta", "1", "--gamma", "2"])), 1);
    assert_eq!(code(&ramdiv(&["--help"])), 0);
}

#[test]
fn validate_reports_checks() {
    let v = json(&ramdiv(&["validate", "-i", &data("cocycle_p3_column.json")]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"]["associativity"]["status"], "pass");
}

#[test]
fn oracle_agrees() {
    for name in ["kummer_p2n2_fx3.json", "cocycle_p3_column.json", "kummer_p5_fx.json"] {
        let out = ramdiv(&["oracle", "-i", &data(name), "--infinity"]);
        assert_eq!(code(&out), 0, "{name}");
        let v = json(&out);
        assert_eq!(v["disagreements"], 0);
        assert!(v["places"].as_array().unwrap().iter().all(|p| p["agree"] == true));
    }
    let v = json(&ramdiv(&["oracle", "-i", &data("kummer_p3_fx.json"), "--place", "inf"]));
    assert_eq!(v["places"][0]["oracle"], 2);
}

#[test]
fn devissage_identity() {
    let out = ramdiv(&["devissage", "-i", &data("kummer_p2n2_fx.json"), "--m", "1", "--infinity"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["equal"], true);
    assert_eq!(code(&ramdiv(&["devissage", "-i", &data("cocycle_p3_column.json"), "--m", "1"])), 1);
}

#[test]
fn gorenstein_twisted_product() {
    let v = json(&ramdiv(&["gorenstein", "-i", &data("twisted_product_z2z2.json")]));
    let verdict = &v["verdicts"][0];
    assert_eq!(verdict["gorenstein"], true);
    assert_eq!(verdict["witness"], serde_json::json!([1, 0]));
}

#[test]
fn gorenstein_search_is_deterministic() {
    let a = ramdiv(&["gorenstein", "--search", "--group", "3:1", "--seed", "5", "--count", "30"]);
    let b = ramdiv(&["gorenstein", "--search", "--group", "3:1", "--seed", "5", "--count", "30"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["tried"], 30);
}

#[test]
fn genus_of_rational_cover() {
    let v = json(&ramdiv(&["genus", "-i", &data("kummer_p2n2_fx.json")]));
    assert_eq!(v["g_y"], 0);
    assert_eq!(v["deg_r"], 6);
    assert_eq!(v["two_g_y_minus_2"], -2);
}

#[test]
fn genus_uses_file_and_override_g_x() {
    let v = json(&ramdiv(&["genus", "-i", &data("kummer_p3_gx2.json")]));
    assert_eq!(v["g_x"], 2);
    assert_eq!(v["g_y"], 6);
    let v = json(&ramdiv(&["genus", "-i", &data("kummer_p3_gx2.json"), "--g-x", "0"]));
    assert_eq!(v["g_y"], 0);
}

#[test]
fn genus_hypothesis_failure() {
    let out = ramdiv(&["genus", "-i", &data("kummer_p2_cusp_infinity.json")]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "HypothesisFailure");
}

#[test]
fn gln_regression_counterexample() {
    let v = json(&ramdiv(&["regress-gln", "-p", "2", "-n", "2", "--beta", "1", "--gamma", "2"]));
    assert_eq!(v["equal"], false);
    assert_eq!(v["summary"], "15[Δ] ≠ 3[Δ] + 6[Δ]");
}

#[test]
fn fuzz_is_clean_and_reproducible() {
    let a = ramdiv(&["fuzz", "--seed", "3", "--count", "24"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    let b = ramdiv(&["fuzz", "--seed", "3", "--count", "24"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn table_format() {
    let out = ramdiv(&["--format", "table", "ramify", "-i", &data("kummer_p3_fx.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("place"));
    assert!(text.contains("R_G = 2[x]"));
}
