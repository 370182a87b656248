use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

/// Runs the binary with `--json` and returns the exit code and report.
fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_crossed"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn dims_h(report: &Value) -> Vec<u64> {
    report["payload"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dim_H"].as_u64().unwrap())
        .collect()
}

#[test]
fn check_lie_passes_on_sl2() {
    let (code, r) = run(&["check-lie", &fixture("sl2.alg")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["findings"].as_array().unwrap().len(), 0);
    assert_eq!(r["payload"]["dim"], 3);
}

#[test]
fn check_lie_reports_jacobi_failure() {
    let (code, r) = run(&["check-lie", &fixture("not_lie.alg")]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["findings"][0]["check"], "jacobi");
}

#[test]
fn unknown_basis_name_is_a_parse_error() {
    let (code, r) = run(&["check-lie", &fixture("unknown_name.alg")]);
    assert_eq!(code, 2);
    assert_eq!(r["payload"]["kind"], "parse");
    assert!(r["payload"]["message"].as_str().unwrap().contains("\"e3\""));
}

#[test]
fn wrong_shape_is_a_shape_error() {
    let (code, r) = run(&["check-action", &fixture("wrong_shape.setup")]);
    assert_eq!(code, 2);
    assert_eq!(r["payload"]["kind"], "shape");
    assert!(r["payload"]["message"]
        .as_str()
        .unwrap()
        .contains("expected 2x2, found 2x3"));
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, r) = run(&["check-lie", &fixture("does_not_exist.alg")]);
    assert_eq!(code, 2);
    assert_eq!(r["payload"]["kind"], "io");
}

#[test]
fn bad_crossed_hom_reports_the_pair() {
    let (code, r) = run(&["check-crossed-hom", &fixture("dim2_bad.setup")]);
    assert_eq!(code, 1);
    let findings = r["findings"].as_array().unwrap();
    assert_eq!(findings.len(), 1);
    assert_eq!(findings[0]["at"], serde_json::json!(["e1", "e2"]));
    assert_eq!(r["payload"]["twist"]["twist_is_homomorphism"], false);
}

#[test]
fn good_crossed_homs_pass() {
    for f in [
        "dim2_case_i.setup",
        "dim2_case_ii.setup",
        "dim2_inline.setup",
        "sl2_adjoint.setup",
        "heisenberg_adjoint.setup",
    ] {
        let (code, r) = run(&["check-crossed-hom", &fixture(f)]);
        assert_eq!(code, 0, "{f}: {r}");
        assert_eq!(r["payload"]["twist"]["twist_is_homomorphism"], true);
    }
}

#[test]
fn cohomology_of_sl2_vanishes() {
    let (code, r) = run(&["cohomology", "--max-degree", "2", &fixture("sl2_adjoint.setup")]);
    assert_eq!(code, 0);
    assert_eq!(dims_h(&r), vec![0, 0, 0]);
    assert_eq!(r["payload"]["degrees"][1]["dim_C"], 9);
}

#[test]
fn cohomology_rejects_non_crossed_maps() {
    let (code, r) = run(&["cohomology", &fixture("dim2_bad.setup")]);
    assert_eq!(code, 1);
    assert_eq!(r["findings"][0]["check"], "crossed_hom");
}

#[test]
fn mc_residual_matches_crossed_hom_check() {
    let (code, r) = run(&["mc-residual", &fixture("dim2_bad.setup")]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["vanishes"], false);
    assert_eq!(r["findings"][0]["residual"]["e2"], "-1");
    let (code, r) = run(&["mc-residual", &fixture("dim2_case_ii.setup")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["vanishes"], true);
}

#[test]
fn nijenhuis_element_and_grid() {
    let (code, r) = run(&["nijenhuis", "--element", "1,1", &fixture("dim2_case_ii.setup")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["conditions"].as_array().unwrap().len(), 4);
    let (code, r) = run(&["nijenhuis", "--element", "0,1,0", &fixture("sl2_adjoint.setup")]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["conditions"][0]["pass"], false);
    let (code, r) = run(&["nijenhuis", "--grid", "-1,0,1", &fixture("heisenberg_adjoint.setup")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["count"], 27);
    let (code, _) = run(&["nijenhuis", &fixture("sl2_adjoint.setup")]);
    assert_eq!(code, 2);
}

#[test]
fn deform_produces_certified_generator() {
    let (code, r) = run(&["deform", "--element", "1,0,0", &fixture("heisenberg_adjoint.setup")]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["payload"]["generator"].as_array().unwrap().len(), 3);
    let (code, _) = run(&["deform", "--element", "0,1,0", &fixture("sl2_adjoint.setup")]);
    assert_eq!(code, 1);
    let (code, _) = run(&["deform", "--element", "1", &fixture("dim2_case_ii.setup")]);
    assert_eq!(code, 2);
}

#[test]
fn solve_grid_reproduces_the_classification() {
    let (code, r) = run(&["solve-grid", "--grid", "-1,0,1", &fixture("dim2_case_ii.setup")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["count"], 15);
    let (code, r) = run(&[
        "solve-grid",
        "--grid",
        "-3,-2,-1,0,1,2,3",
        &fixture("sl2_adjoint.setup"),
    ]);
    assert_eq!(code, 2);
    assert!(r["payload"]["message"].as_str().unwrap().contains("exceeds"));
}

#[test]
fn witt_verify_families() {
    for family in ["full", "sdiv", "ham"] {
        let (code, r) = run(&["witt-verify", "--n", "1", "--family", family, "--window", "2"]);
        assert_eq!(code, 0, "{family}: {r}");
        assert_eq!(r["payload"]["family"], family);
    }
    let (code, r) = run(&[
        "witt-verify",
        "--n",
        "2",
        "--family",
        "pq",
        "--p",
        &fixture("p_example.json"),
    ]);
    assert_eq!(code, 0, "{r}");
    let (code, _) = run(&["witt-verify", "--n", "2", "--family", "pq"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["witt-verify", "--n", "1", "--window", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn shen_larsson_table() {
    let (code, r) = run(&["shen-larsson", "--n", "1", "--rep", "natural", "--window", "1"]);
    assert_eq!(code, 0);
    let table = r["payload"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 3 * 3);
    let entry = table
        .iter()
        .find(|e| e["actor"] == "x^(1) d_1" && e["on"] == "v1 (x) x^(1)")
        .unwrap();
    // s_1 + r_1 θ(E_11) = 1 + 1
    assert_eq!(entry["result"]["v1 (x) x^(2)"], "2");
}

#[test]
fn rinehart_and_leibniz_files() {
    for f in ["der_dual_numbers.lr", "witt_dual_numbers.lr"] {
        let (code, r) = run(&["check-rinehart", &fixture(f)]);
        assert_eq!(code, 0, "{f}: {r}");
    }
    let (code, r) = run(&["check-rinehart", &fixture("bad_anchor.lr")]);
    assert_eq!(code, 1);
    assert!(!r["findings"].as_array().unwrap().is_empty());
    let (code, r) = run(&["check-leibniz", &fixture("euler_pair.lp")]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["cohomology", "--max-degree", "3", &fixture("heisenberg_adjoint.setup")];
    let a = Command::new(env!("CARGO_BIN_EXE_crossed"))
        .args(args)
        .arg("--json")
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_crossed"))
        .args(args)
        .arg("--json")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_json_report() {
    let dir = std::env::temp_dir().join(format!("crossed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_crossed"))
        .args(["check-lie", &fixture("sl2.alg"), "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("check-lie: PASS"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["status"], "pass");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    let out = Command::new(env!("CARGO_BIN_EXE_crossed"))
        .arg("no-such-command")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_crossed"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
