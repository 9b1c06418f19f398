use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_almost-ortho"))
}

#[test]
fn csv_runs_are_byte_identical() {
    let run = || {
        bin()
            .args(["--family", "laguerre", "--seed", "9", "--format", "csv"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn text_output_has_both_tables() {
    let out = bin().args(["--trials", "2", "--eps", "1e-2,1e-3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Weak orthogonality"));
    assert!(text.contains("Quasi almost orthogonality"));
    assert!(text.contains("0.1(-2)"));
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("almost-ortho-{}.json", std::process::id()));
    let status = bin()
        .args(["--format", "json", "--mode", "weak", "--trials", "1", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["config"]["mode"], "weak");
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        vec!["--s", "4"],
        vec!["--family", "jacobi"],
        vec!["--eps", "1.5"],
        vec!["--trials", "0"],
        vec!["--shift-indices", "0,0"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
