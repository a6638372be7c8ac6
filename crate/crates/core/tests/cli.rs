use std::process::{Command, Output};

use apolar_kit::groebner::Ideal;
use apolar_kit::polyring::Family;
use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_apolar-kit");

const BINARY_GAD: &str =
    r#"{"d":3,"summands":[{"L":"X0","k":2,"G":"4*X0^2+2*X0*X1-4*X1^2"},{"L":"X1","k":1,"G":"-3*X0-5*X1"}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("APOLAR_KIT_MAX_DEGREE").output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ideal_of(v: &Value) -> Ideal {
    let gens: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
    Ideal::parse(v["vars"].as_u64().unwrap() as usize, Family::Y, &gens).unwrap()
}

#[test]
fn natural_scheme_off_the_chart() {
    let v = ok_json(&["natural-scheme", "--f", "(X0+3*X1-2*X2)*(X1+X2)*X2", "--l", "X0+3*X1-2*X2", "--n", "2"]);
    assert_eq!(v["length"], 4);
    let expected = Ideal::parse(3, Family::Y, &["(2*Y0+Y2)*(8*Y0-2*Y1+Y2)", "(3*Y0-Y1)^2"]).unwrap();
    assert!(ideal_of(&v["ideal"]).equals(&expected).unwrap());
}

#[test]
fn hf_matches_the_documented_output_byte_for_byte() {
    let out = run(&["hf", "--ideal", r#"{"generators":["Y0^2*Y1^3"],"vars":2,"family":"Y"}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), r#"{"hf":[1,2,3,4,5],"limit":5,"regularity":4}"#);
}

#[test]
fn corpus_all_passes() {
    let v = ok_json(&["corpus", "--all"]);
    let reports = v["fixtures"].as_array().unwrap();
    assert_eq!(reports.len(), 8);
    assert!(reports.iter().all(|r| r["passed"] == true));
    let one = ok_json(&["corpus", "--id", "short-quartic"]);
    assert_eq!(one["fixtures"][0]["passed"], true);
}

#[test]
fn gad_verbs() {
    let v = ok_json(&["gad-scheme", "--gad", BINARY_GAD]);
    assert_eq!(v["hilbert"], json!([1, 2, 3, 4, 5]));
    assert_eq!(v["length"], 5);
    let cert = ok_json(&["redundancy-cert", "--gad", BINARY_GAD, "--index", "0"]);
    assert_eq!(cert["found"], true);
    assert_eq!(cert["rewritten"]["summands"].as_array().unwrap().len(), 2);
    let fat = ok_json(&["fat-containment", "--gad", BINARY_GAD]);
    assert_eq!(fat["profile"], json!([true, true]));
    let short = ok_json(&["short-criterion", "--gad", BINARY_GAD]);
    assert_eq!(short["applies"], true);
}

#[test]
fn ideal_verbs() {
    let i = r#"{"generators":["Y0*Y1","Y1^2"],"vars":2,"family":"Y"}"#;
    let j = r#"{"generators":["Y0"],"vars":2,"family":"Y"}"#;
    let meet = ok_json(&["intersect", "--ideal", i, "--ideal", j]);
    let expected = Ideal::parse(2, Family::Y, &["Y0*Y1"]).unwrap();
    assert!(ideal_of(&meet["ideal"]).equals(&expected).unwrap());
    let sat = ok_json(&["saturate", "--ideal", i, "--g", "Y0"]);
    let expected = Ideal::parse(2, Family::Y, &["Y1"]).unwrap();
    assert!(ideal_of(&sat["ideal"]).equals(&expected).unwrap());
    let ann = ok_json(&["ann", "--f", "X0^2*X1^2"]);
    assert!(ann.is_object() || ann.is_array());
    let apolar = ok_json(&["apolar", "--ideal", r#"{"generators":["Y0^2*Y1^3"],"vars":2,"family":"Y"}"#, "--f", "X0^2*X1^2"]);
    assert_eq!(apolar["apolar"], true);
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    for args in [&["bogus"][..], &["hf"], &["regularity", "--ideal"], &[]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = Command::new(BIN)
        .args(["hf", "--ideal", r#"{"generators":["Y0"],"vars":2,"family":"Y"}"#])
        .env("APOLAR_KIT_MAX_DEGREE", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_an_error_object() {
    let cases: [&[&str]; 3] = [
        &["hf", "--ideal", r#"{"generators":["Y0^2*Y1^3"],"vars":2,"family":"X"}"#],
        &["natural-scheme", "--f", "X0^2+X1", "--l", "X0"],
        &["tangential-shorten", "--gad", BINARY_GAD],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v["error"].is_string() && v["message"].is_string(), "{v}");
    }
}

#[test]
fn file_input_and_pretty_output_agree_with_flags() {
    let dir = std::env::temp_dir().join(format!("apolar-kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    std::fs::write(&path, json!({"gad": serde_json::from_str::<Value>(BINARY_GAD).unwrap(), "index": 0}).to_string()).unwrap();
    let from_file = ok_json(&["redundancy-cert", "--file", path.to_str().unwrap()]);
    let from_flags = ok_json(&["redundancy-cert", "--gad", BINARY_GAD, "--index", "0"]);
    assert_eq!(from_file, from_flags);

    let bare = dir.join("gad.json");
    std::fs::write(&bare, BINARY_GAD).unwrap();
    assert_eq!(ok_json(&["gad-scheme", "--file", bare.to_str().unwrap()]), ok_json(&["gad-scheme", "--gad", BINARY_GAD]));

    let pretty = run(&["--pretty", "gad-scheme", "--gad", BINARY_GAD]);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  "));
    assert_eq!(serde_json::from_slice::<Value>(&pretty.stdout).unwrap(), ok_json(&["gad-scheme", "--gad", BINARY_GAD]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_is_byte_stable_across_runs() {
    let commands: [&[&str]; 4] = [
        &["natural-scheme", "--f", "(X0+3*X1-2*X2)*(X1+X2)*X2", "--l", "X0+3*X1-2*X2", "--n", "2", "--trace"],
        &["gad-scheme", "--gad", BINARY_GAD],
        &["redundancy-cert", "--gad", BINARY_GAD, "--index", "0"],
        &["corpus", "--all"],
    ];
    for args in commands {
        let first = run(args).stdout;
        let second = run(args).stdout;
        assert!(!first.is_empty());
        assert_eq!(first, second, "{args:?}");
    }
}
