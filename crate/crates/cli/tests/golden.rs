//! Byte-stable reports for the worked examples. Run with `UPDATE_GOLDEN=1`
//! to regenerate.

use std::path::PathBuf;
use std::process::Command;

use apolar_cli::report::Report;

const CASES: &[(&str, &[&str])] = &[
    ("rank_binary_x0_3_x1", &["rank-binary", "-e", "x0^3*x1"]),
    ("rank_binary_x0_5", &["rank-binary", "-e", "x0^5"]),
    ("counterexample_k3_d5", &["counterexample", "--k", "3", "--d", "5"]),
    ("counterexample_ci_cubics", &["counterexample", "--ci-cubics"]),
    ("schoenhage_3_2", &["schoenhage", "--e", "3", "--l", "2"]),
    ("bini", &["bini"]),
    ("gotzmann_3d_plus_1", &["gotzmann", "-p", "1,3", "--r", "2"]),
    ("recover_x0_2_x1", &["recover", "-e", "x0^2*x1"]),
];

fn render(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_apolar"))
        .arg("--json")
        .args(args)
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{args:?}");
    let mut report: Report = serde_json::from_slice(&out.stdout).unwrap();
    report.elapsed_ms = 0;
    report.to_json() + "\n"
}

#[test]
fn golden_reports_are_stable() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in CASES {
        let path = dir.join(format!("{name}.json"));
        let actual = render(args);
        assert_eq!(actual, render(args), "{name} differs between runs");
        if update {
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(actual, expected, "{name} drifted from its golden file");
    }
}
