use std::process::{Command, Output};

use apolar_cli::report::Report;

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(args)
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    apolar(args).status.code().expect("exited normally")
}

#[test]
fn success_exits_zero() {
    assert_eq!(code(&["rank-binary", "-e", "x0^3*x1"]), 0);
    assert_eq!(code(&["bini"]), 0);
    assert_eq!(code(&["catalecticant", "-e", "x0^2*x1^2", "--a", "2"]), 0);
}

#[test]
fn user_input_errors_exit_two() {
    let out = apolar(&["rank-binary", "-e", "x0 + x1^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InhomogeneousInput"));
    assert_eq!(code(&["rank-binary", "-e", "x0^2 + x2^2"]), 2);
    assert_eq!(code(&["gotzmann", "-p", "1/2"]), 2);
    assert_eq!(code(&["gotzmann", "-p", "0"]), 2);
    assert_eq!(code(&["counterexample", "--k", "3"]), 2);
    assert_eq!(code(&["counterexample", "--k", "3", "--d", "5", "--grid"]), 2);
    assert_eq!(code(&["schoenhage", "--e", "1"]), 2);
    assert_eq!(code(&["tensor-eval", "{\"dims\": [1, 1], \"terms\": []}"]), 2);
    assert_eq!(code(&["catalecticant", "-e", "x0^3", "--a", "3"]), 2);
    assert_eq!(code(&["recover", "-e", "x0^2 + x1^2"]), 2);
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("apolar.toml");
    std::fs::write(&path, "max_vars = 0\n").unwrap();
    let out = apolar(&["--config", path.to_str().unwrap(), "bini"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&path, "colour = \"red\"\n").unwrap();
    assert_eq!(code(&["--config", path.to_str().unwrap(), "bini"]), 2);
    assert_eq!(code(&["--config", dir.path().join("missing.toml").to_str().unwrap(), "bini"]), 2);
}

#[test]
fn config_limits_apply_to_forms() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("limits.toml");
    std::fs::write(&path, "max_degree = 3\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&["--config", p, "rank-binary", "-e", "x0^3"]), 0);
    assert_eq!(code(&["--config", p, "rank-binary", "-e", "x0^4"]), 2);
}

#[test]
fn certify_unique_reads_decomposition_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dec.json");
    std::fs::write(&path, r#"[{"coef": "1", "point": ["1", "0", "0"]}, {"coef": 2, "point": ["0", "1", "1"]}]"#).unwrap();
    let p = path.to_str().unwrap();
    let out = apolar(&["--json", "certify-unique", "-e", "x0^4 + 2*x1^4 + 8*x1^3*x2 + 12*x1^2*x2^2 + 8*x1*x2^3 + 2*x2^4", "--decomp", p]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.result["status"], "Certified");

    std::fs::write(&path, r#"[{"coef": "1", "point": ["1", "0"]}]"#).unwrap();
    let out = apolar(&["certify-unique", "-e", "x0^4 + x1^4", "--decomp", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotADecomposition"));
}

#[test]
fn json_reports_round_trip() {
    let cases: &[&[&str]] = &[
        &["rank-binary", "-e", "x0^3*x1"],
        &["rank-binary", "-e", "2*x0^3 + 12*x0*x1^2"],
        &["catalecticant", "-e", "x0^2*x1*x2"],
        &["gotzmann", "-p", "1,3", "--r", "2"],
        &["counterexample", "--k", "4", "--d", "4"],
        &["counterexample", "--ci-cubics", "--d", "3"],
        &["schoenhage", "--e", "2", "--l", "3"],
        &["schoenhage", "--sweep", "--parallel"],
        &["tensor-eval", r#"{"dims":[2,1,1],"terms":[[["1","1/2"],["1"],["-3"]]]}"#],
        &["recover", "-e", "x0^2*x1"],
        &["main-lemma", "--count", "10"],
        &["uniqueness", "--count", "5"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let out = apolar(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let report: Report = serde_json::from_str(&text).unwrap();
        assert!(report.version.starts_with("1.0"));
        assert_eq!(report.command, args[0]);
        assert_eq!(report.to_json(), text.trim_end(), "{args:?}");
        let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&String> = raw.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 7);
    }
}

#[test]
fn seeded_sweeps_are_reproducible() {
    let a = apolar(&["--json", "main-lemma", "--count", "20", "--seed", "7"]);
    let b = apolar(&["--json", "main-lemma", "--count", "20", "--seed", "7"]);
    let strip = |o: &Output| {
        let mut r: Report = serde_json::from_slice(&o.stdout).unwrap();
        r.elapsed_ms = 0;
        r
    };
    assert_eq!(strip(&a), strip(&b));
}
