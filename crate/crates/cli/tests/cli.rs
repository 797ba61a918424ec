use std::process::{Command, Output};

fn semireg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semireg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exact_small_shapes() {
    let out = semireg(&["exact", "24", "12"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "d_reg = 4");

    // (1 - z)(1 + z)^2 = 1 + z - z^2 - z^3: first non-positive at k = 2
    let out = semireg(&["exact", "2", "1", "--coefficients", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("m,n,dreg\n2,1,2\n"), "{text}");
    assert!(text.contains("k,coefficient\n0,1\n1,1\n"), "{text}");
}

#[test]
fn exact_rejects_underdetermined() {
    let out = semireg(&["exact", "12", "24"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("m > n"), "{err}");
}

#[test]
fn bounds_report() {
    let out = semireg(&["bounds", "512", "256"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sandwich: 22 / 28 <= 29 <= 100 / 46 (holds)"), "{text}");

    let text = stdout(&semireg(&["bounds", "356", "256"]));
    assert!(text.contains("LS_upper = not applicable: negative discriminant"), "{text}");

    let text = stdout(&semireg(&["bounds", "24", "12"]));
    assert!(text.contains("sandwich: 2 / 4 <= 4 <= 7 / 7 (holds)"), "{text}");
}

#[test]
fn bounds_json_and_curve() {
    let out = semireg(&["bounds", "356", "256", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dreg"], 48);
    assert_eq!(v["ls_upper"]["value"], serde_json::Value::Null);
    assert_eq!(v["ls_upper"]["reason"], "negative_discriminant");
    assert_eq!(v["sandwich_holds"], true);

    let text = stdout(&semireg(&["bounds", "24", "12", "--curve"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,kz_lower,ls_lower,ls_upper,l_upper,threshold"));
    let row6 = text.lines().find(|l| l.starts_with("6,")).unwrap();
    let cols: Vec<&str> = row6.split(',').collect();
    let ls_upper: f64 = cols[3].parse().unwrap();
    let l_upper: f64 = cols[4].parse().unwrap();
    assert!((ls_upper - 11.68).abs() < 0.01);
    assert!((l_upper - 11.97).abs() < 0.01);
    assert_eq!(text.lines().count(), 1 + 18);
}

#[test]
fn table_m_equals_2n() {
    let out = semireg(&["table", "--family", "2n", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "256,512,29,22,28,100,46");
    assert_eq!(rows[7], "32768,65536,2844,2812,2763,12519,3249");
}

#[test]
fn table_nlog2n_row() {
    let text = stdout(&semireg(&["table", "--family", "nlog2n", "--n", "256", "--format", "csv"]));
    assert!(text.starts_with("# family: m = n log2(n); m rounding: floor\n"), "{text}");
    assert_eq!(text.lines().last(), Some("256,2048,8,5,8,20,14"));
}

#[test]
fn table_empty_and_invalid() {
    let text = stdout(&semireg(&["table", "--family", "n+100", "--n", "", "--format", "md"]));
    assert_eq!(text.lines().filter(|l| l.starts_with('|')).count(), 2);

    assert_eq!(semireg(&["table", "--family", "0.5n"]).status.code(), Some(2));
    assert_eq!(semireg(&["table", "--family", "n+x"]).status.code(), Some(2));
    assert_eq!(semireg(&["table", "--family", "list", "--pairs", "3:5"]).status.code(), Some(2));
}

#[test]
fn table_output_is_deterministic() {
    let args = ["table", "--family", "n+256", "--n", "2^8..2^11", "--columns", "dreg,ls_upper,l_upper,f5_log2"];
    let first = semireg(&args);
    let second = semireg(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.contains("| 256 | 512 | 29 | 100 | 46 |"), "{text}");
}

#[test]
fn table_json_round_trips() {
    let out = semireg(&["table", "--family", "8n", "--n", "256,512", "--format", "json"]);
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rounding"], "nearest");
    assert_eq!(v["rows"][0]["ls_upper"]["value"], 20);
    let again = serde_json::to_string_pretty(&v).unwrap();
    let v2: serde_json::Value = serde_json::from_str(&again).unwrap();
    assert_eq!(v, v2);
    assert_eq!(serde_json::to_string_pretty(&v2).unwrap(), again);
}

#[test]
fn near_boundary_renders_question_mark() {
    // an i1 known to a single digit makes the LS lower bound undecidable
    let out = semireg(&["bounds", "24", "12", "--airy-i1", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().split(',').nth(4).unwrap().ends_with('?'), "{text}");
}

#[test]
fn verify_runs_and_respects_ceiling() {
    let out = semireg(&["verify", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("all suites passed up to N = 20"));

    let out = semireg(&["verify", "1"]);
    assert!(out.status.success());

    let out = semireg(&["verify", "1000000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rejects_bad_global_flags() {
    assert_eq!(semireg(&["--precision", "0", "verify", "5"]).status.code(), Some(2));
    assert_eq!(semireg(&["--airy-i1", "abc", "bounds", "24", "12"]).status.code(), Some(2));
    assert_eq!(semireg(&["--format", "xml", "exact", "24", "12"]).status.code(), Some(2));
}
