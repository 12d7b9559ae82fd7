mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::sample;

fn topica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topica")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    sample(name).to_str().unwrap().to_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_reports_consistency_and_violations() {
    let ok = topica(&["check", &path("porphyry.kb")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "consistent");

    let bad = scratch("cycle.kb", "fact genus a b\nfact genus b a\n");
    let out = topica(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Ax7"));

    let rec = topica(&["--format=records", "check", bad.to_str().unwrap()]);
    for line in stdout(&rec).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["constraint"].is_string() && v["facts"].is_array() && v["message"].is_string());
    }
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let bad = scratch("garbled.kb", "fact genus a\n");
    let out = topica(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(topica(&["check", "/nonexistent.kb"]).status.code(), Some(2));
    assert_eq!(topica(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(topica(&["--format=xml", "catalog", "list"]).status.code(), Some(2));
}

#[test]
fn saturate_writes_records_to_a_file() {
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("fire.records");
    let o = topica(&[
        "--format",
        "records",
        "saturate",
        &path("fire.kb"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("fact S_more fire flame light\n"));
    let mut lines: Vec<&str> = text.lines().collect();
    let sorted = {
        let mut s = lines.clone();
        s.sort();
        s
    };
    assert_eq!(lines, sorted);
    lines.dedup();
    assert!(lines.iter().all(|l| l.starts_with("fact ") || l.starts_with("deny ")));
}

#[test]
fn trace_lines_name_rule_and_premises() {
    let o = topica(&["--trace", "--format=records", "saturate", &path("porphyry.kb")]);
    let text = stdout(&o);
    let trace: Vec<&str> = text.lines().filter(|l| l.starts_with("derived ")).collect();
    assert!(!trace.is_empty());
    assert!(trace.iter().all(|l| l.contains(" by ") && l.ends_with(']')));
    assert!(trace.contains(&"derived pos genus Socrates animal by Ax5 from [genus(Socrates, man), genus(man, animal)]"));
}

#[test]
fn query_with_wildcards() {
    let o = topica(&["query", &path("porphyry.kb"), "genus", "?", "animal"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(
        lines,
        [
            "genus(Plato, animal)",
            "genus(Socrates, animal)",
            "genus(horse, animal)",
            "genus(man, animal)"
        ]
    );
    let neg = topica(&["query", &path("soul-number.kb"), "~nec", "?", "?"]);
    assert_eq!(neg.status.code(), Some(0));
}

#[test]
fn refute_prints_both_sides() {
    let o = topica(&["refute", &path("soul-number.kb"), "genus", "soul", "number"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("refuted genus(soul, number)\nconflict on nec(soul, life)\n"));
    assert!(text.contains("by number-not-life"));

    let none = topica(&["refute", &path("soul-number.kb"), "genus", "soul", "life"]);
    assert_eq!(none.status.code(), Some(0));
    assert_eq!(stdout(&none).trim(), "no contradiction");
}

#[test]
fn defcheck_and_extension() {
    let no = topica(&["defcheck", &path("porphyry.kb"), "horse", "rational animal"]);
    assert_eq!(stdout(&no).trim(), "false");
    let ext = topica(&["extension", &path("porphyry.kb"), "animal"]);
    let names: Vec<String> = stdout(&ext).lines().map(str::to_owned).collect();
    assert_eq!(names, ["Plato", "Socrates", "horse", "man"]);
}

#[test]
fn catalog_list_has_four_columns() {
    let o = topica(&["catalog", "list"]);
    let text = stdout(&o);
    assert!(text.lines().count() >= 75);
    for line in text.lines() {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 4, "{line}");
        assert!(cols[2].starts_with("generative") || cols[2].starts_with("constraint"));
    }
    assert!(text.contains("IV2-19\tIV,2 (19)\tgenerative,dubious\t"));
}

#[test]
fn pairnec_shows_the_expansion() {
    let o = topica(&["pairnec", &path("justice.kb"), "men", "just°"]);
    let text = stdout(&o);
    assert!(text.starts_with("second definition: {first man, second man} in (intemperate + cowardly)"));
    assert!(text.ends_with("which obtains\ntrue\n"));
}

#[test]
fn debate_records_end_with_the_verdict() {
    let o = topica(&["--format=records", "debate", &path("soul-number.debate")]);
    let text = stdout(&o);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["verdict"], "thesis-refuted");
    let attack: serde_json::Value = serde_json::from_str(text.lines().rev().nth(1).unwrap()).unwrap();
    assert_eq!(attack["rule"], "number-not-life");
    assert_eq!(attack["turn"], 1);
}

#[test]
fn dubious_rules_are_opt_in() {
    let kb = scratch(
        "dubious.kb",
        "fact diff2 animal rationality\nfact nec stone being\nfact genus stone body\n",
    );
    let plain = stdout(&topica(&["--format=records", "saturate", kb.to_str().unwrap()]));
    let dubious = stdout(&topica(&[
        "--enable-dubious",
        "--format=records",
        "saturate",
        kb.to_str().unwrap(),
    ]));
    assert!(dubious.lines().count() >= plain.lines().count());
    let plain_trace = stdout(&topica(&[
        "--trace",
        "--format=records",
        "saturate",
        kb.to_str().unwrap(),
    ]));
    assert!(!plain_trace.contains(" by IV2-19 "));
}
