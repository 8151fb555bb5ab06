use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn golod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_golod")).args(args).output().expect("binary runs")
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("golod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn corpus_matches_expected_reports() {
    let mut checked = 0;
    let mut entries: Vec<_> = std::fs::read_dir(corpus()).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for path in entries.iter().filter(|p| p.extension().is_some_and(|e| e == "ideal")) {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let expected = std::fs::read_to_string(corpus().join("expected").join(format!("{}.json", stem)))
            .unwrap_or_else(|_| panic!("missing expected report for {}", stem));
        let out = golod(&["check", path.to_str().unwrap()]);
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert_eq!(stdout, expected, "report for {} changed", stem);
        let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        let code = match report["verdict"]["status"].as_str().unwrap() {
            "PROVEN_GOLOD" => 0,
            "REFUTED" => 1,
            _ => 2,
        };
        assert_eq!(out.status.code(), Some(code), "exit code for {}", stem);
        if code == 1 {
            assert!(report["verdict"]["witness"].is_object(), "{} refuted without a witness", stem);
        }
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn exit_codes_for_each_status() {
    let square = write_temp("square.ideal", "ring Q[x,y]; ideal a = x^2, x*y, y^2;");
    let out = golod(&["check", square.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"certificate\": \"lofwall\""));

    let ci = write_temp("ci.ideal", "ring Q[x,y]; ideal a = x^2, y^2;");
    let out = golod(&["check", ci.to_str().unwrap(), "--report", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("x*y e1^e2"));

    let cubic = write_temp("cubic.ideal", "ring Q[x,y]; ideal a = x^3 + y^3;");
    let out = golod(&["check", cubic.to_str().unwrap(), "--criterion", "strongly-golod"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write_temp("bad.ideal", "ring Q[x,y];\nideal a = x + 1;");
    let out = golod(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator 1 of ideal 'a'"));

    let out = golod(&["check", cubic.to_str().unwrap(), "--criterion", "product"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn flags_override_the_file() {
    let ci = write_temp("ci_flags.ideal", "ring Q[x,y]; ideal a = x^2, y^2;");
    let p = ci.to_str().unwrap();
    let out = golod(&["check", p, "--field", "F7", "--order", "lex", "--truncation", "4", "--series"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["input"]["ring"], "F7[x,y]");
    assert_eq!(report["input"]["order"], "lex");
    assert_eq!(report["series"]["defect"], serde_json::json!([0, 0, 0, 1, 3]));
    let out = golod(&["check", p, "--criterion", "refute-only", "--rho-mmax", "2", "--budget-seconds", "600"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["rho_m_max"], 2);
    assert_eq!(report["budget"]["limit_seconds"], 600);
}

#[test]
fn identical_runs_are_byte_identical() {
    let path = corpus().join("product_of_variables_and_squares.ideal");
    let a = golod(&["check", path.to_str().unwrap()]).stdout;
    let b = golod(&["check", path.to_str().unwrap()]).stdout;
    assert_eq!(a, b);
}

#[test]
fn parse_prints_normalized_input() {
    let path = write_temp("norm.ideal", "ring Q[x,y]; ideal a = (x+y)^2, 1/2*x*y;");
    let out = golod(&["parse", path.to_str().unwrap()]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "ring Q[x,y];\nideal a = x^2 + 2*x*y + y^2, 1/2*x*y;\n"
    );
}
