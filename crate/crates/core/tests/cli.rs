use std::process::{Command, Output};

fn zimin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zimin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_answers_through_exit_status() {
    let yes = zimin(&["check", "zimin", "--word", "0102010", "--n", "3"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes), "true\n");
    let no = zimin(&["check", "zimin", "--word", "0011", "--n", "2"]);
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn encounter_reports_span_in_json() {
    let o = zimin(&["check", "encounter", "--word", "xfreezerx", "--pattern", "cool", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], true);
    assert!(v["witness"].as_array().unwrap().len() == 3);
}

#[test]
fn explicit_alphabet_tokens() {
    let o = zimin(&["check", "instance", "--word", "abab", "--alphabet", "ab,c", "--pattern", "xx"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\nφ(x) = ab\n");
}

#[test]
fn z2_at_seven_digits() {
    let o = zimin(&["density", "z2", "--q", "3", "--digits", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("0.4430202"));
}

#[test]
fn z3_json_has_exact_bounds() {
    let o = zimin(&["density", "z3", "--q", "2", "--n-cap", "8", "--m", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["target"], "z3");
    assert_eq!(v["params"]["N"], 8);
    assert!(v["lower"].as_str().unwrap().contains('/'));
}

#[test]
fn density_failures_exit_three() {
    let o = zimin(&["density", "zn-bounds", "--n", "3", "--q", "2", "--caps", "4,4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error:"));
}

#[test]
fn cache_file_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("seq.json");
    let c = cache.to_str().unwrap();
    let first = zimin(&["seq", "c", "--q", "2", "--ell", "2", "--max", "12", "--cache", c]);
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.contains("\"c:2:2\""));
    let second = zimin(&["seq", "c", "--q", "2", "--ell", "2", "--max", "12", "--cache", c]);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn empirical_is_reproducible() {
    let args = ["density", "empirical", "--zimin", "3", "--q", "2", "--len", "60", "--mode", "montecarlo", "--samples", "4000", "--seed", "9"];
    assert_eq!(stdout(&zimin(&args)), stdout(&zimin(&args)));
}

#[test]
fn tables_render_in_every_format() {
    for f in ["text", "csv", "md", "json"] {
        let o = zimin(&["table", "t4", "--format", f]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert!(stdout(&o).contains("0.11944370"), "{f}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(zimin(&["seq", "nope", "--max", "3"]).status.code(), Some(2));
    assert_eq!(zimin(&["seq", "b", "--max", "3"]).status.code(), Some(2));
}
