use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn ipk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ipk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "structured"];
    all.extend_from_slice(args);
    let o = ipk(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("structured output is JSON"))
}

#[test]
fn check_vacuous() {
    let o = ipk(&["check", &data("vacuous.ipk")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("coherent (0 assessments)\n"));
}

#[test]
fn check_incoherent_exits_3() {
    for file in ["partial_loss.ipk", "dominated.ipk"] {
        let o = ipk(&["check", &data(file)]);
        assert_eq!(o.status.code(), Some(3), "{file}");
        assert!(stdout(&o).starts_with("incoherent"));
    }
    let (code, doc) = structured(&["check", &data("dominated.ipk")]);
    assert_eq!(code, 3);
    assert_eq!(doc["instances"][0]["verdict"], "dominated-assessment");
    assert_eq!(doc["instances"][0]["dominated"]["natural_extension"], "3/5");
    assert_eq!(doc["instances"][0]["direct_route"], "agrees");
}

#[test]
fn invalid_input_exits_2_with_located_diagnostics() {
    let o = ipk(&["check", &data("invalid.ipk")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("gambles.f: arity mismatch"), "{err}");
    assert!(err.contains("assessments[0].event: empty conditioning event"), "{err}");
    let (code, doc) = structured(&["check", &data("invalid.ipk")]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "input-error");
    assert_eq!(doc["diagnostics"].as_array().unwrap().len(), 2);
    assert_eq!(ipk(&["check", &data("missing.ipk")]).status.code(), Some(2));
}

#[test]
fn natex_inline_gamble() {
    let o = ipk(&["natex", &data("interval.ipk"), "--gamble", "[0,1]", "--event", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
    let o = ipk(&["natex", &data("interval.ipk"), "--gamble", "ia", "--decimal"]);
    assert_eq!(stdout(&o), "3/10\n  decimal 0.3\n");
}

#[test]
fn natex_file_queries_and_errors() {
    let (code, doc) = structured(&["natex", &data("interval.ipk")]);
    assert_eq!(code, 0);
    let values: Vec<&str> = doc["values"].as_array().unwrap().iter().map(|v| v["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["3/10", "0"]);
    assert_eq!(ipk(&["natex", &data("interval.ipk"), "--gamble", "[1]"]).status.code(), Some(2));
    assert_eq!(ipk(&["natex", &data("interval.ipk"), "--gamble", "ia", "--event", "z"]).status.code(), Some(2));
    assert_eq!(ipk(&["natex", &data("partial_loss.ipk"), "--gamble", "[1,0]"]).status.code(), Some(3));
}

#[test]
fn product_values() {
    let (code, doc) = structured(&[
        "product",
        &data("interval.ipk"),
        &data("second.ipk"),
        "--fam1",
        "singletons",
        "--fam2",
        "all",
        "--query",
        &data("joint_queries.json"),
    ]);
    assert_eq!(code, 0);
    let values: Vec<&str> = doc["values"].as_array().unwrap().iter().map(|v| v["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["3/10", "0", "3/10"]);
    let bad_family = ipk(&[
        "product",
        &data("interval.ipk"),
        &data("second.ipk"),
        "--fam1",
        "bogus",
        "--query",
        &data("joint_queries.json"),
    ]);
    assert_eq!(bad_family.status.code(), Some(2));
    let incoherent = ipk(&[
        "product",
        &data("dominated.ipk"),
        &data("second.ipk"),
        "--query",
        &data("joint_queries.json"),
    ]);
    assert_eq!(incoherent.status.code(), Some(3));
}

#[test]
fn verify_pair_additivity() {
    let o = ipk(&["verify", &data("pair.ipk"), "--property", "additivity", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("holds"), "{text}");
    assert!(text.contains("joint(f+h) = 3/10, E_1(f)+E_2(h) = 3/10"), "{text}");
    assert!(text.contains("all passed"));
}

#[test]
fn verify_all_groups_on_file_and_generated_subjects() {
    let (code, doc) = structured(&["verify", &data("pair.ipk"), &data("interval.ipk")]);
    assert_eq!(code, 0);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["suite"]["properties"].as_array().unwrap().len(), 21);
    let (code, doc) = structured(&["verify", "--property", "invariance", "--subjects", "3", "--samples", "3"]);
    assert_eq!(code, 0);
    assert!(doc["suite"]["properties"].as_array().unwrap().iter().all(|p| p["group"] == "invariance"));
    assert_eq!(ipk(&["verify", &data("dominated.ipk")]).status.code(), Some(3));
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["--format", "structured", "--seed", "11", "verify", &data("pair.ipk"), "--samples", "4"];
    let a = ipk(&args);
    let b = ipk(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "structured", "verify", "--property", "marginals", "--subjects", "3", "--samples", "3"];
    assert_eq!(ipk(&args).stdout, ipk(&args).stdout);
}

#[test]
fn text_and_structured_agree() {
    for (file, coherent) in [("interval.ipk", true), ("partial_loss.ipk", false)] {
        let text = stdout(&ipk(&["check", &data(file)]));
        let (_, doc) = structured(&["check", &data(file)]);
        assert_eq!(doc["coherent"], coherent);
        assert_eq!(text.lines().next().unwrap(), doc["instances"][0]["summary"].as_str().unwrap());
    }
}

#[test]
fn measurable_verdicts() {
    let o = ipk(&["measurable", &data("overlap.ipk"), "--gamble", "g", "--family", "overlap"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("measurable\n"));
    let (_, doc) = structured(&["measurable", &data("overlap.ipk"), "--gamble", "h", "--family", "overlap"]);
    assert_eq!(doc["measurable"], false);
    assert_eq!(doc["decomposition"], Value::Null);
    let (_, doc) = structured(&["measurable", &data("overlap.ipk"), "--gamble", "h", "--family", "all"]);
    assert_eq!(doc["measurable"], true);
    assert_eq!(doc["threshold"], "passes");
    let negative = ipk(&["measurable", &data("overlap.ipk"), "--gamble", "[-1,0,0]", "--family", "all"]);
    assert_eq!(negative.status.code(), Some(2));
}

#[test]
fn float_timing_is_opt_in() {
    let (_, doc) = structured(&["check", &data("vacuous.ipk")]);
    assert!(doc.get("elapsed_seconds").is_none());
    let (_, doc) = structured(&["--float-timing", "check", &data("vacuous.ipk")]);
    assert!(doc["elapsed_seconds"].is_f64());
}

#[test]
fn written_instances_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("three.ipk");
    std::fs::write(
        &path,
        r#"{"space": ["a","b","c"], "assessments": [{"gamble": "[1,0,0]", "event": ["a","b"], "lower": "1/2"}]}"#,
    )
    .unwrap();
    let o = ipk(&["natex", path.to_str().unwrap(), "--gamble", "[1,0,0]", "--event", "{a,b}"]);
    assert_eq!(stdout(&o), "1/2\n");
}
