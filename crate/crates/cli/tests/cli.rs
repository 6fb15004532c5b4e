use std::path::PathBuf;
use std::process::{Command, Output};

fn qhforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhforge"))
        .args(args)
        .env_remove("QHFORGE_DEFAULT_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compare with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites the file.
fn golden(name: &str, args: &[&str]) {
    let o = qhforge(args);
    assert!(o.status.success(), "{:?} failed: {}", args, stderr(&o));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let got = stdout(&o);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "output of {:?} differs from {}", args, name);
}

#[test]
fn ring_mul_matches_display_convention() {
    let o = qhforge(&["ring", "mul", "--ring", "g24", "x2^2", "x2^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 * t^8");
}

#[test]
fn ring_invert_reports_witness() {
    let o = qhforge(&["ring", "invert", "--ring", "g24", "x1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("x1^2 - 2*x2"), "{}", stderr(&o));

    let o = qhforge(&["--format", "json", "ring", "invert", "--ring", "g24", "x1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "error");
    assert_eq!(v["error"], "not-a-unit");
    assert_eq!(v["witness"], "x1^2 - 2*x2");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qhforge(&["bogus"]).status.code(), Some(2));
    assert_eq!(qhforge(&["ring", "mul", "--ring", "g24", "--nope", "x1"]).status.code(), Some(2));
    assert_eq!(qhforge(&["ring", "mul", "--ring", "nowhere", "x1"]).status.code(), Some(2));
    let o = qhforge(&["ring", "mul", "--ring", "g24", "x1 * x9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x9") && stderr(&o).contains("5..7"), "{}", stderr(&o));
}

#[test]
fn json_reports_carry_schema_version() {
    for args in [
        &["--format", "json", "ring", "info", "--ring", "cpn:2"][..],
        &["--format", "json", "units", "classify", "--ring", "g24"],
        &["--format", "json", "propd", "check", "--ring", "g24"],
        &["--format", "json", "verdict", "--ring", "g24"],
    ] {
        let o = qhforge(args);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["schema_version"], 1, "{:?}", args);
    }
}

#[test]
fn units_report_has_schema_fields() {
    let o = qhforge(&["--format", "json", "units", "order", "--ring", "g24"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for field in ["ring", "bounds", "classes", "orders", "completeness"] {
        assert!(v.get(field).is_some(), "missing {}", field);
    }
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn default_bound_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qhforge"))
        .args(["--format", "json", "units", "classify", "--ring", "g24"])
        .env("QHFORGE_DEFAULT_BOUND", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounds"]["coeff_bound"], 3);
    let o = qhforge(&["--format", "json", "units", "classify", "--ring", "g24"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounds"]["coeff_bound"], 5);
}

#[test]
fn dump_table_writes_json() {
    let path = std::env::temp_dir().join(format!("qhforge-table-{}.json", std::process::id()));
    let o = qhforge(&["ring", "info", "--ring", "g24", "--dump-table", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["entries"].as_array().unwrap().len(), 21);
    assert_eq!(v["entries"][0]["product"], "1 * t^8");
}

#[test]
fn verify_subset_passes() {
    let o = qhforge(&["verify-paper", "--only", "1,3,6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3, "{}", out);
}

#[test]
fn golden_ring_info() {
    golden("ring_info_g24.txt", &["ring", "info", "--ring", "g24", "--table"]);
    golden("ring_info_cp1xcp1.json", &["--format", "json", "ring", "info", "--ring", "prod:cpn:1,cpn:1"]);
}

#[test]
fn golden_ring_arithmetic() {
    golden("ring_mul_cp2.txt", &["ring", "mul", "--ring", "cpn:2", "x", "x", "x"]);
    golden("ring_pow_g24.json", &["--format", "json", "ring", "pow", "--ring", "g24", "x1^2 - x2", "4"]);
    golden("ring_pow_negative.txt", &["ring", "pow", "--ring", "cpn:3", "x", "-3"]);
    golden("ring_invert_g24.txt", &["ring", "invert", "--ring", "g24", "x2"]);
    golden("ring_invert_faithful.txt", &["--phi-faithful", "ring", "invert", "--ring", "g24@universal", "x2"]);
}

#[test]
fn golden_units() {
    golden("units_classify_g24.txt", &["units", "classify", "--ring", "g24"]);
    golden("units_classify_g24.json", &["--format", "json", "units", "classify", "--ring", "g24"]);
    golden("units_order_g24.txt", &["units", "order", "--ring", "g24"]);
    golden("units_order_cp1xcp2.txt", &["units", "order", "--ring", "prod:cpn:1,cpn:2"]);
}

#[test]
fn golden_group_units() {
    golden("group_units_cp2.txt", &["group", "units", "--cpn", "2"]);
    golden("group_units_rank2.txt", &["group", "units", "--weights", "1/2,1/3", "--exponent", "2"]);
    golden("group_units_cp1xcp2.txt", &["group", "units", "--ring", "prod:cpn:1,cpn:2", "--exponent", "2"]);
    assert_eq!(qhforge(&["group", "units", "--ring", "g24"]).status.code(), Some(1));
}

#[test]
fn golden_property_d() {
    golden("propd_g24.txt", &["propd", "check", "--ring", "g24"]);
    golden("propd_cp1xcp1.txt", &["propd", "check", "--ring", "prod:cpn:1,cpn:1"]);
    golden("propd_g24.json", &["--format", "json", "propd", "check", "--ring", "g24"]);
}

#[test]
fn golden_verdict() {
    golden("verdict_g24.txt", &["verdict", "--ring", "g24"]);
    golden("verdict_cp2xcp2.json", &["--format", "json", "verdict", "--ring", "prod:cpn:2,cpn:2"]);
}

#[test]
fn golden_phi_sigma() {
    golden("phi_sigma_g24.txt", &["--phi-faithful", "seidel", "phi-sigma", "--c1vert", "-8", "--coupling", "-8", "--elem", "x1^2"]);
    golden("phi_sigma_cp1.txt", &["seidel", "phi-sigma", "--ring", "cpn:1", "--c1vert", "1", "--coupling", "1/2", "--elem", "x*e_L"]);
}
