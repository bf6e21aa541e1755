use hfskit_core::cprs::{cprs_flat, FLAT_SOURCE, HFS_SOURCE};
use hfskit_core::CrispInputs;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn hfskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfskit"))
        .args(args)
        .env_remove("HFSKIT_COLOR")
        .current_dir(std::env::temp_dir())
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = hfskit(&all);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "hfskit.report/v1");
    v["results"].clone()
}

const ZEROS: &str = "Q1=0,Q2=0,Q3=0,Q4=0,Q5=0";

#[test]
fn eval_all_zero_is_no() {
    let o = hfskit(&["eval", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--inputs", ZEROS]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("WebProgrammer = 1.7340 (No)"), "{}", stdout(&o));
}

#[test]
fn eval_trace_exposes_intermediates() {
    let r = json(&["eval", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--inputs", ZEROS, "--trace"]);
    let trace = r["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 4);
    let fls1 = trace.iter().find(|s| s["output"] == "comb_skill1").unwrap();
    assert!((fls1["crisp"].as_f64().unwrap() - 5.0 / 3.0).abs() < 1e-3);
    assert_eq!(fls1["fired"][0]["rule"], "IF Q1 is Weak AND Q2 is Weak THEN comb_skill1 is Weak");
    let text = stdout(&hfskit(&["eval", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--inputs", ZEROS, "--trace"]));
    assert!(text.contains("comb_skill1 = 1.6667 (Weak)"));
}

#[test]
fn eval_missing_input_exits_2_naming_it() {
    let o = hfskit(&["eval", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--inputs", "Q1=0,Q2=0,Q3=0,Q4=0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("Q5"));
    assert!(stdout(&o).is_empty());
    let o = hfskit(&["eval", "--system", "cprs_flat.hfs", "--inputs", "Q1=1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn eval_rejects_bad_assignments() {
    for inputs in ["Q1", "Q1=x", "Q1=1,Q1=2", "Q9=1", "Q1=inf"] {
        let o = hfskit(&["eval", "--system", "cprs_flat.hfs", "--inputs", inputs]);
        assert_eq!(code(&o), 1, "{inputs}");
    }
}

#[test]
fn eval_flat_matches_library() {
    let flat = cprs_flat();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let inputs: CrispInputs = (1..=5).map(|i| (format!("Q{i}"), rng.gen_range(0.0..=10.0))).collect();
        let arg: Vec<String> = inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let r = json(&["eval", "--system", "cprs_flat.hfs", "--inputs", &arg.join(",")]);
        let lib = flat.evaluate(&inputs).unwrap();
        assert_eq!(r["outputs"][0]["crisp"].as_f64().unwrap().to_bits(), lib.crisp.to_bits());
        assert_eq!(r["outputs"][0]["label"], lib.label.as_str());
    }
}

#[test]
fn eval_with_no_fired_rule_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sparse.hfs");
    std::fs::write(
        &path,
        "system sparse {\n    input a range 0 10 {\n        term lo tri(0, 0, 5);\n        term hi tri(5, 10, 10);\n    }\n    \
         output y range 0 1 {\n        term n tri(0, 0, 1);\n        term p tri(0, 1, 1);\n    }\n    rules {\n        IF a is lo THEN y is n;\n    }\n}\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&hfskit(&["eval", "--system", p, "--inputs", "a=1"])), 0);
    let o = hfskit(&["eval", "--system", p, "--inputs", "a=9"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("empty"));
}

#[test]
fn parse_errors_exit_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.hfs");
    std::fs::write(&path, FLAT_SOURCE.replacen("rulegen mean;", "rulegen mean", 1)).unwrap();
    let o = hfskit(&["eval", "--system", path.to_str().unwrap(), "--inputs", ZEROS]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("syntax error"), "{err}");
    assert!(err.lines().any(|l| l.trim_start().split(':').take(2).all(|n| n.parse::<usize>().is_ok())), "{err}");
}

#[test]
fn name_is_required_when_ambiguous() {
    let o = hfskit(&["eval", "--system", "cprs_hfs.hfs", "--inputs", ZEROS]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--name"));
    assert_eq!(code(&hfskit(&["eval", "--system", "cprs_hfs.hfs", "--name", "nope", "--inputs", ZEROS])), 1);
}

#[test]
fn rules_formula() {
    let r = json(&["rules", "--formula", "--n", "5", "--m", "3"]);
    assert_eq!((r["flat"].as_u64(), r["serial_hfs"].as_u64()), (Some(243), Some(36)));
    let r = json(&["rules", "--formula", "--n", "3", "--m", "3"]);
    assert_eq!((r["flat"].as_u64(), r["serial_hfs"].as_u64()), (Some(27), Some(18)));
    let o = hfskit(&["rules", "--formula", "--n", "1", "--m", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("n >= 2"));
    // beyond u64 but within u128
    let r = json(&["rules", "--formula", "--n", "40", "--m", "6"]);
    assert_eq!(r["flat"], "13367494538843734067838845976576");
    assert_eq!(code(&hfskit(&["rules", "--formula", "--n", "200", "--m", "6"])), 1);
}

#[test]
fn rules_actual() {
    let r = json(&["rules", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs"]);
    assert_eq!(r["total"], 36);
    assert_eq!(r["per_subsystem"].as_array().unwrap().len(), 4);
    assert_eq!(r["formulas"]["flat"], 243);
    let r = json(&["rules", "--system", "cprs_flat.hfs"]);
    assert_eq!(r["total"], 243);
}

#[test]
fn index_with_external_values() {
    let r = json(&["index", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--external-indices", "cprs_fuzzy_index.json"]);
    assert!((r["hfsi"].as_f64().unwrap() - 0.4932).abs() <= 1e-9);
    let r = json(&["index", "--system", "cprs_flat.hfs", "--external-indices", "cprs_fuzzy_index.json"]);
    assert_eq!(r["hfsi"].as_f64().unwrap(), 0.0642);
}

#[test]
fn index_surrogate_and_weights() {
    let r = json(&["index", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs"]);
    assert!((r["hfsi"].as_f64().unwrap() - 0.08333).abs() < 1e-4);
    assert!(r["subsystems"][0]["surrogate"]["coverage"].as_f64().is_some());
    let r = json(&["index", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--weights", "0.2,0.3,0.5"]);
    assert_eq!(r["weights"].as_array().unwrap().len(), 3);

    let arity = hfskit(&["index", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--weights", "0.5,0.5"]);
    assert_eq!(code(&arity), 1);
    let sum = hfskit(&["index", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--weights", "0.5,0.3,0.1"]);
    assert_eq!(code(&sum), 1);
    assert!(stderr(&sum).contains("0.9"), "{}", stderr(&sum));
}

#[test]
fn index_external_file_validation() {
    let dir = tempfile::tempdir().unwrap();
    let bad_schema = dir.path().join("a.json");
    std::fs::write(&bad_schema, r#"{"schema": "other/v9", "indices": {"cprs_flat": 0.1}}"#).unwrap();
    let partial = dir.path().join("b.json");
    std::fs::write(&partial, r#"{"indices": {"FLS1": 0.5}}"#).unwrap();
    for f in [&bad_schema, &partial] {
        let o = hfskit(&["index", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--external-indices", f.to_str().unwrap()]);
        assert_eq!(code(&o), 1);
    }
}

#[test]
fn compare_case_study() {
    let r = json(&["compare", "--flat", "cprs_flat.hfs:cprs_flat", "--hfs", "cprs_hfs.hfs:cprs_hfs", "--grid", "5"]);
    assert!((r["comparison"]["reduction_percent"].as_f64().unwrap() - 85.19).abs() <= 0.01);
    assert_eq!(r["disagreement"]["points"], 243);
    assert_eq!(r["disagreement"]["failures"], 0);
    let parallel =
        json(&["compare", "--flat", "cprs_flat.hfs:cprs_flat", "--hfs", "cprs_hfs.hfs:cprs_hfs", "--grid", "5", "--parallel"]);
    assert_eq!(parallel, r);
}

#[test]
fn compare_with_itself() {
    let r = json(&["compare", "--flat", "cprs_flat.hfs:cprs_flat", "--hfs", "cprs_flat.hfs:cprs_flat", "--grid", "5"]);
    assert_eq!(r["comparison"]["reduction_percent"].as_f64(), Some(0.0));
    assert_eq!(r["disagreement"]["max_abs"].as_f64(), Some(0.0));
}

#[test]
fn compare_errors() {
    let mismatch = hfskit(&["compare", "--flat", "cprs_flat.hfs:cprs_flat", "--hfs", "cprs_hfs.hfs:fls1"]);
    assert_eq!(code(&mismatch), 1);
    for (flat, hfs) in [("cprs_flat.hfs", "cprs_hfs.hfs:cprs_hfs"), ("cprs_hfs.hfs:cprs_hfs", "cprs_hfs.hfs:cprs_hfs")] {
        assert_eq!(code(&hfskit(&["compare", "--flat", flat, "--hfs", hfs])), 1);
    }
    for step in ["0", "-1", "0.0001"] {
        let o = hfskit(&["compare", "--flat", "cprs_flat.hfs:cprs_flat", "--hfs", "cprs_hfs.hfs:cprs_hfs", "--grid", step]);
        assert_eq!(code(&o), 1, "{step}");
    }
}

#[test]
fn compare_splits_on_last_colon() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("a:b");
    std::fs::create_dir(&sub).unwrap();
    let path = sub.join("flat.hfs");
    std::fs::write(&path, FLAT_SOURCE).unwrap();
    let loc = format!("{}:cprs_flat", path.display());
    let r = json(&["compare", "--flat", &loc, "--hfs", "cprs_hfs.hfs:cprs_hfs"]);
    assert_eq!(r["comparison"]["flat_rules"], 243);
}

#[test]
fn reproduce_reports_every_check() {
    let r = json(&["reproduce"]);
    assert_eq!(r["passed"], true);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    let c = checks.iter().find(|c| c["id"] == "c").unwrap();
    assert_eq!(c["expected"].as_f64(), Some(85.19));
    assert_eq!(c["provenance"], "DERIVED");
    let text = stdout(&hfskit(&["reproduce"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 6);
}

#[test]
fn reproduce_tampered_bundle_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cprs_flat.hfs"), FLAT_SOURCE).unwrap();
    // FLS4 loses its generated rules, so counts and labels break
    let tampered = HFS_SOURCE.replacen("rulegen mean;", "rules {\n        IF comb_skill1 is Good AND comb_skill2 is Good THEN comb_skill3 is Good;\n    }", 1);
    assert_ne!(tampered, HFS_SOURCE);
    std::fs::write(dir.path().join("cprs_hfs.hfs"), tampered).unwrap();
    let o = hfskit(&["reproduce", "--bundle-dir", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 4);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> =
        v["results"]["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["id"].as_str().unwrap()).collect();
    assert!(failed.contains(&"b"), "{failed:?}");
    assert_eq!(v["results"]["checks"].as_array().unwrap().len(), 6);

    let text = hfskit(&["reproduce", "--bundle-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&text), 4);
    assert!(stdout(&text).contains("[FAIL] (b)"));

    let empty = tempfile::tempdir().unwrap();
    assert_eq!(code(&hfskit(&["reproduce", "--bundle-dir", empty.path().to_str().unwrap()])), 1);
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        vec!["reproduce", "--format", "json"],
        vec!["compare", "--flat", "cprs_flat.hfs:cprs_flat", "--hfs", "cprs_hfs.hfs:cprs_hfs", "--grid", "5", "--format", "json"],
    ] {
        assert_eq!(hfskit(&args).stdout, hfskit(&args).stdout);
    }
}

#[test]
fn plot_csv() {
    let o = hfskit(&["plot", "--system", "cprs_flat.hfs", "--variable", "Q1", "--samples", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "x,Weak,Medium,Good\n0.0000,1.0000,0.0000,0.0000\n5.0000,0.0000,1.0000,0.0000\n10.0000,0.0000,0.0000,1.0000\n"
    );
    let r = json(&["plot", "--system", "cprs_hfs.hfs", "--name", "cprs_hfs", "--variable", "comb_skill3"]);
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 201);
    for row in rows {
        let sum: f64 = row["memberships"].as_array().unwrap().iter().map(|m| m.as_f64().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }
    assert_eq!(code(&hfskit(&["plot", "--system", "cprs_flat.hfs", "--variable", "Q9"])), 1);
    assert_eq!(code(&hfskit(&["plot", "--system", "cprs_flat.hfs", "--variable", "Q1", "--samples", "1"])), 1);
}

#[test]
fn color_follows_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_hfskit")).args(["reproduce"]).env("HFSKIT_COLOR", v).output().unwrap().stdout
    };
    assert!(run("1").contains(&0x1b));
    assert!(!run("0").contains(&0x1b));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(code(&hfskit(&[])), 1);
    assert_eq!(code(&hfskit(&["frobnicate"])), 1);
    assert_eq!(code(&hfskit(&["eval", "--system", "cprs_flat.hfs"])), 1);
    assert_eq!(code(&hfskit(&["rules", "--formula", "--n", "3"])), 1);
    assert_eq!(code(&hfskit(&["--format", "yaml", "reproduce"])), 1);
    let help = hfskit(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("reproduce"));
    assert_eq!(code(&hfskit(&["--version"])), 0);
}

#[test]
fn missing_files_exit_1() {
    let o = hfskit(&["eval", "--system", "/nonexistent/other.hfs", "--inputs", "a=1"]);
    assert_eq!(code(&o), 1);
    // bundled names resolve even under a directory that does not exist
    let ok = hfskit(&["eval", "--system", "/nonexistent/cprs_flat.hfs", "--inputs", ZEROS]);
    assert_eq!(code(&ok), 0);
    assert!(Path::new("/nonexistent").metadata().is_err());
}

#[test]
fn json_errors_go_to_stderr() {
    let o = hfskit(&["eval", "--system", "cprs_flat.hfs", "--inputs", "Q1=0", "--format", "json"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    let v: Value = serde_json::from_str(&stderr(&o)).unwrap();
    assert_eq!(v["results"]["exit_code"], 2);
}
