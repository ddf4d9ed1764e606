use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn capcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capcheck"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn mortgage() -> String {
    corpus().join("mortgage/series.csv").to_string_lossy().into_owned()
}

#[test]
fn features_json() {
    let out = capcheck(&["features", &mortgage(), "--width", "640", "--height", "480"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let f = v["features"].as_array().unwrap();
    assert!(!f.is_empty() && f.len() <= 5);
    assert_eq!(f[0]["rank"], 1);

    let narrowed = capcheck(&["features", &mortgage(), "--xmin", "1995-01-01", "--xmax", "2010-12-01"]);
    assert_eq!(narrowed.status.code(), Some(0));
    assert_ne!(stdout(&narrowed), stdout(&out));
}

#[test]
fn missing_or_bad_input_exits_2() {
    let out = capcheck(&["features", "/nonexistent/series.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.csv", "2020-01-01,1\nnot-a-date,2\n");
    let out = capcheck(&["features", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));
    let out = capcheck(&["lint", &mortgage(), "/nonexistent/caption.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lint_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let clean = write(
        dir.path(),
        "clean.txt",
        "The chart shows mortgage rates between 1971 and 2020.",
    );
    let out = capcheck(&["lint", &mortgage(), &clean]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "");

    let factual = write(dir.path(), "factual.txt", "Rates soared from 1980 to 1991.");
    let out = capcheck(&["lint", &mortgage(), &factual]);
    assert_eq!(out.status.code(), Some(1));
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].starts_with("factual:6-30: "), "{}", lines[0]);

    let dip = write(dir.path(), "dip.txt", "There was a dip between 2008 and 2012.");
    let out = capcheck(&["lint", &mortgage(), &dip]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("mismatch:12-37: "), "{text}");
    let out = capcheck(&["lint", &mortgage(), &dip, "--strict"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lint_lines_follow_caption_order() {
    let dir = tempfile::tempdir().unwrap();
    let caption = write(
        dir.path(),
        "c.txt",
        "There was a dip between 2008 and 2012. Rates soared from 1980 to 1991. Rates rose in 2030.",
    );
    let out = capcheck(&["lint", &mortgage(), &caption]);
    let starts: Vec<usize> = stdout(&out)
        .lines()
        .map(|l| l.split(':').nth(1).unwrap().split('-').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(starts.len(), 3);
    assert!(starts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(capcheck(&["lint", &mortgage(), &caption]).stdout, out.stdout);
}

#[test]
fn lint_json() {
    let dir = tempfile::tempdir().unwrap();
    let caption = write(dir.path(), "c.txt", "Rates peaked in 1981.");
    let out = capcheck(&["lint", &mortgage(), &caption, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["references"][0]["matchedRank"], 1);
    assert_eq!(v["diagnostics"], serde_json::json!([]));
}

#[test]
fn eval_bundled_corpus() {
    let out = capcheck(&["eval", &corpus().to_string_lossy()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.trim_end().ends_with("FN 0  FP 0  IM 0"), "{text}");
    assert!(text.contains("correct 35 (100.00%)"), "{text}");
}

#[test]
fn eval_rejects_malformed_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("broken");
    std::fs::create_dir(&bundle).unwrap();
    write(&bundle, "series.csv", "2020-01-01,1\n2020-01-02,2\n");
    write(&bundle, "spec.json", "{}");
    write(&bundle, "caption.txt", "x");
    write(&bundle, "gold.json", "{\"sentences\": []}");
    let out = capcheck(&["eval", &dir.path().to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    let empty = tempfile::tempdir().unwrap();
    assert_eq!(
        capcheck(&["eval", &empty.path().to_string_lossy()]).status.code(),
        Some(2)
    );
}
