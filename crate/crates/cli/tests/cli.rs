use assert_cmd::Command;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::cargo_bin("flag-orbits").unwrap().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, stdout, stderr) = run(&all);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn tits_values() {
    assert_eq!(json(&["tits", "2,2,2|1,1,1,3|1,1,1,3"])["result"]["tits_form"], 0);
    assert_eq!(json(&["tits", "1,1|1,1|1,1"])["result"]["tits_form"], 1);
}

#[test]
fn malformed_input_reports_position() {
    let (code, _, stderr) = run(&["tits", "1,x|1|1,0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("byte 2"), "{stderr}");
    let (code, _, _) = run(&["tits", "2|1,1|2,0"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn finite_verdicts() {
    let r = json(&["finite", "3,3,3|2,2,5|1,1,1,1,1,4"]);
    assert_eq!(r["result"]["finite"], false);
    assert_eq!(r["result"]["pattern"]["witness"]["a"], serde_json::json!([3, 3, 3]));
    let r = json(&["finite", "1|1|1,0", "--engine", "exhaustive"]);
    assert_eq!(r["result"]["finite"], true);
    let (code, stdout, _) = run(&["finite", "1,1|1,1|1,1", "--engine", "pattern"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "pattern: finite\n");
}

#[test]
fn exhaustive_budget_exits_with_three() {
    let (code, _, stderr) = run(&["finite", "3,3,3|2,2,5|1,1,1,1,1,4", "--engine", "exhaustive", "--max-summands", "10"]);
    assert_eq!(code, 3, "{stderr}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["orbits", "list", "2,1|1,2|2,1", "--json"];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    let report: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(report["command"], "orbits list");
    assert_eq!(report["input"], "2,1|1,2|2,1");
    assert_eq!(report["result"]["families"].as_array().unwrap().len(), 3);
    assert!(report["diagnostics"].as_array().unwrap().is_empty());
    assert!(report.get("timestamp").is_none());
}

#[test]
fn vector_from_json_file() {
    let dir = std::env::temp_dir().join(format!("flag-orbits-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.json");
    std::fs::write(&path, r#"{"a":[1,1],"b":[1,1],"c":[1,1]}"#).unwrap();
    let r = json(&["orbits", "count", path.to_str().unwrap()]);
    assert_eq!(r["result"]["orbits"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_listing() {
    let r = json(&["catalog", "--max-weight", "2"]);
    let rows = r["result"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["tag"]["family"], "F3");
    let (code, stdout, _) = run(&["catalog", "--max-weight", "1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1|1|1,0\tS1\n1|1,0|1\tS1 mirrored\n2 vectors\n");
}

#[test]
fn orbit_counts_and_oracle() {
    assert_eq!(json(&["orbits", "count", "1,1,1|1,2|1,1,1"])["result"]["orbits"], 13);
    let r = json(&["oracle", "count", "1,1|1,1|1,1", "--field", "2", "--mode", "dl"]);
    assert_eq!(r["result"]["orbits"], 3);
    let r = json(&["oracle", "reps", "2|1,1|1,1"]);
    let reps = r["result"]["orbits"].as_array().unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(reps[0]["representative"]["b"][0]["rows"], serde_json::json!([[1, 0]]));
    let (code, _, _) = run(&["oracle", "count", "1|1|1,0", "--field", "7"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["oracle", "count", "1,1|1,1|1,1", "--max-points", "3"]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&["orbits", "count", "1,1,1,1|1,1,2|1,1,2"]);
    assert_eq!(code, 2);
}

#[test]
fn relaxation_commands() {
    let r = json(&["relax", "solve", "8"]);
    assert_eq!(r["result"][0]["solutions"], serde_json::json!([[2, 2], [2, 3], [2, 4], [2, 5], [2, 6]]));
    let r = json(&["relax", "eval", "2", "1", "2"]);
    assert_eq!(r["result"]["two_q"], "2");
    let (code, _, _) = run(&["relax", "eval", "3", "1", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn thread_cap_must_be_positive() {
    let out = Command::cargo_bin("flag-orbits")
        .unwrap()
        .env("FLAG_ORBITS_THREADS", "0")
        .args(["tits", "1|1|1,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::cargo_bin("flag-orbits")
        .unwrap()
        .env("FLAG_ORBITS_THREADS", "1")
        .args(["tits", "1|1|1,0"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn quick_verify_on_small_universes() {
    let (code, stdout, stderr) = run(&["verify", "--quick", "--engine-weight", "3", "--catalog-weight", "6"]);
    assert_eq!(code, 0, "{stdout}{stderr}");
    assert_eq!(stdout.lines().filter(|l| l.starts_with("[PASS]")).count(), 9, "{stdout}");
    assert!(stderr.contains("F_3 skipped"));
}
