use std::process::{Command, Output};

fn gravent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gravent")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn zeros_and_horizons() {
    let out = gravent(&["zeros", "--xi2", "0.16"]);
    assert!(out.status.success());
    let z: f64 = stdout(&out).trim().parse().unwrap();
    assert!((z - 1.2425).abs() < 1e-4);

    let out = gravent(&["horizons", "--xi2", "0.5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("naked singularity"));

    let out = gravent(&["horizons", "--xi2", "0.16"]);
    assert_eq!(stdout(&out), "0.2\n0.8\n");
}

#[test]
fn exit_codes() {
    let out = gravent(&["horizons", "--xi2", "-0.1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DomainError"));

    assert_eq!(gravent(&["figure", "7"]).status.code(), Some(2));
    assert_eq!(gravent(&["zeros"]).status.code(), Some(2));
    assert_eq!(gravent(&["sweep", "--variable", "q", "--lo", "0"]).status.code(), Some(2));
    assert_eq!(gravent(&["--help"]).status.code(), Some(0));
}

#[test]
fn figure_csv_is_deterministic_and_reproducible_from_its_config() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    let replay = dir.path().join("c.csv");
    let config = dir.path().join("fig4.json");
    for path in [&first, &second] {
        let out = gravent(&["figure", "4", "--format", "csv", "-o", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&first).unwrap();
    assert_eq!(a, std::fs::read(&second).unwrap());
    let text = String::from_utf8(a.clone()).unwrap();
    assert!(text.lines().any(|l| l == "z,C,S,concurrence,E,flags"));
    assert!(text.starts_with("# "));

    let printed = gravent(&["figure", "4", "--print-config"]);
    std::fs::write(&config, &printed.stdout).unwrap();
    let out = gravent(&["sweep", "--config", config.to_str().unwrap(), "-o", replay.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(a, std::fs::read(&replay).unwrap());
}

#[test]
fn config_keys_are_checked_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"variable": "q", "lo": 0, "hi": 1, "colour": "red"}"#).unwrap();
    let out = gravent(&["sweep", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));

    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        r#"{"variable": "q", "lo": 0, "hi": 1, "samples": 3, "xi2": 0.265, "z": 1.6, "beta": 1, "tau_ratio": 5}"#,
    )
    .unwrap();
    let out = gravent(&["sweep", "--config", good.to_str().unwrap(), "--tau-ratio", "0", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["config"]["tau_ratio"], 0.0);
    assert_eq!(doc["meta"]["config"]["z"], 1.6);
    for row in doc["rows"].as_array().unwrap() {
        assert!((row["E"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn svg_output() {
    let out = gravent(&[
        "sweep", "--variable", "z", "--lo", "0.5", "--hi", "3", "--samples", "40", "--xi2", "0.16", "--q", "0.6",
        "--beta", "1", "--tau-ratio", "5", "--format", "svg",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = stdout(&out);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<metadata>{\"variable\":\"z\""));
    assert!(svg.matches("<polyline").count() >= 1);
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn feature_commands() {
    let out = gravent(&["minima", "--figure", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z,E");
    assert_eq!(lines.len(), 2);
    let z: f64 = lines[1].split(',').next().unwrap().parse().unwrap();
    assert!((z - 2.25).abs() < 0.1);

    let out = gravent(&["radial-check", "--bell", "chi4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS chi4"));

    let out = gravent(&["frame-compare"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("1.0,,") && l.ends_with("static-divergent")));
    assert!(text.lines().any(|l| l.starts_with("1.5,0.0,") && l.ends_with("static-zero")));
}
