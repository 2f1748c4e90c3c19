use std::path::PathBuf;
use std::process::Command;

use tumbug_cli::{run, ExitStatus};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn call(args: &[&str]) -> (ExitStatus, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tumbug").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn match_ranks_throw_candidates() {
    let (s, out, _) =
        call(&["match", "--context", &fixture("throw_context.table"), "--lexicon", &fixture("throw_lexicon.table")]);
    assert_eq!(s, ExitStatus::Success);
    assert_eq!(out, "lancer 2\njeter 1\n");
}

#[test]
fn match_other_context_row() {
    let ctx = fixture("throw_context.table");
    let lex = fixture("throw_lexicon.table");
    let (s, out, _) = call(&["match", "--context", &ctx, "--lexicon", &lex, "--row", "C2"]);
    assert_eq!(s, ExitStatus::Success);
    assert_eq!(out, "jeter 2\nlancer 1\n");
    let (s, _, err) = call(&["match", "--context", &ctx, "--lexicon", &lex, "--row", "C9"]);
    assert_eq!(s, ExitStatus::Usage);
    assert!(err.contains("not found"));
}

#[test]
fn classify_letters() {
    assert_eq!(call(&["classify", "MotionArrow"]).1, "C\n");
    assert_eq!(call(&["classify", "PhysicalObjectCircle"]).1, "O\n");
    let (s, _, err) = call(&["classify", "Teapot"]);
    assert_eq!(s, ExitStatus::Usage);
    assert!(!err.is_empty());
}

#[test]
fn validate_reports_time_attached() {
    let (s, out, _) = call(&["validate", &fixture("time_attached.tum")]);
    assert_eq!(s, ExitStatus::Findings);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("TIME_ATTACHED"));
    let (s, out, _) = call(&["validate", &fixture("ws11.tum")]);
    assert_eq!((s, out.as_str()), (ExitStatus::Success, ""));
}

#[test]
fn parse_errors_are_usage_errors() {
    let (s, out, err) = call(&["validate", &fixture("broken.tum")]);
    assert_eq!(s, ExitStatus::Usage);
    assert!(out.is_empty());
    assert!(err.contains("1:"));
    assert_eq!(call(&["validate", &fixture("missing.tum")]).0, ExitStatus::Usage);
    assert_eq!(call(&["frobnicate"]).0, ExitStatus::Usage);
    assert_eq!(call(&[]).0, ExitStatus::Usage);
}

#[test]
fn query_values_and_dk() {
    let f = fixture("room.tum");
    assert_eq!(call(&["query", &f, "--owner", "room", "--attr", "color"]).1, "\"blue\"\n");
    assert_eq!(call(&["query", &f, "--owner", "lamp", "--attr", "color"]).1, "DK\n");
    assert_eq!(call(&["query", &f, "--owner", "ghost", "--attr", "color"]).0, ExitStatus::Usage);
}

#[test]
fn trace_follows_schedule() {
    let f = fixture("branch.tum");
    assert_eq!(call(&["trace", &f, "--schedule", "else"]).1, "(S1 S3 S4)\n");
    assert_eq!(call(&["trace", &f, "--schedule", "then"]).1, "(S1 S2 S4)\n");
    let (s, _, err) = call(&["trace", &f]);
    assert_eq!(s, ExitStatus::Findings);
    assert!(err.contains("schedule"));
}

#[test]
fn template_round_trips_through_trace() {
    let dir = tempfile::tempdir().unwrap();
    let (s, text, _) = call(&["template", "flowchart:loop"]);
    assert_eq!(s, ExitStatus::Success);
    let path = dir.path().join("loop.tum");
    std::fs::write(&path, &text).unwrap();
    let p = path.display().to_string();
    assert_eq!(call(&["trace", &p, "--schedule", "repeat,exit"]).1, "(S1 S2 S3 S2 S3 S4)\n");
    assert_eq!(call(&["validate", &p]).0, ExitStatus::Success);
}

#[test]
fn template_roles_and_list() {
    let (s, text, _) = call(&["template", "PTRANS_T", "--roles", "Ann,box,home"]);
    assert_eq!(s, ExitStatus::Success);
    assert!(text.contains("\"Ann\""));
    let (_, list, _) = call(&["template", "--list"]);
    assert!(list.lines().any(|l| l == "barbara"));
    assert!(list.lines().count() >= 14 + 6 + 12 + 3);
    assert_eq!(call(&["template", "nonsense"]).0, ExitStatus::Usage);
    assert_eq!(call(&["template"]).0, ExitStatus::Usage);
}

#[test]
fn modal_rows() {
    assert_eq!(call(&["modal", "can", "permission"]).1, "Permission\nRequest\n");
    assert_eq!(call(&["modal", "be able to", "ability"]).1, "Ability\n(Request)\n");
    assert_eq!(call(&["modal", "can", "flying"]).0, ExitStatus::Usage);
}

#[test]
fn heuristics_requirements_and_check() {
    let (s, out, _) = call(&["heuristics", "--tags", "causal-connective:because"]);
    assert_eq!(s, ExitStatus::Success);
    assert_eq!(out, "mandatory CausationArrow #11\n");
    let (s, out, _) = call(&["heuristics", "--tags", "downward-gravity", "--check", &fixture("ws11.tum")]);
    assert_eq!(s, ExitStatus::Success);
    assert!(out.lines().all(|l| l.contains("present")));
    let (s, out, _) = call(&["heuristics", "--tags", "causal-connective:because", "--check", &fixture("room.tum")]);
    assert_eq!(s, ExitStatus::Findings);
    assert!(out.contains("CausationArrow missing"));
    assert_eq!(call(&["heuristics", "--tags", "vibes"]).0, ExitStatus::Usage);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ws11.svg");
    let o = out.display().to_string();
    let (s, _, _) = call(&["render", &fixture("ws11.tum"), "-o", &o, "--color"]);
    assert_eq!(s, ExitStatus::Success);
    let first = std::fs::read_to_string(&out).unwrap();
    assert!(first.starts_with("<svg") || first.starts_with("<?xml"));
    assert!(first.contains("id=\"tom\""));
    call(&["render", &fixture("ws11.tum"), "-o", &o, "--color"]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);

    let bad = dir.path().join("bad.svg");
    let (s, _, err) = call(&["render", &fixture("time_attached.tum"), "-o", &bad.display().to_string()]);
    assert_eq!(s, ExitStatus::Findings);
    assert!(err.contains("TIME_ATTACHED"));
    assert!(!bad.exists());
    assert_eq!(call(&["render", &fixture("ws11.tum"), "-o", &o, "--width", "-5"]).0, ExitStatus::Usage);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = call(&["template", "aspect:future-perfect-progressive-both"]);
    let b = call(&["template", "aspect:future-perfect-progressive-both"]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes_and_table_override() {
    let bin = env!("CARGO_BIN_EXE_tumbug");
    let st = Command::new(bin).args(["validate", &fixture("time_attached.tum")]).env_remove("TUMBUG_TABLES").output();
    assert_eq!(st.unwrap().status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let table = "SolitaryArrow L L L L\nSolitaryNonquan L L L L\nArrowOut L L L L\nArrowIn L I L L\n\
                 ArrowBetween L L L L\nSelfLoop L L I L\n";
    let header = "# shape Time Motion Force Causation\n";
    std::fs::write(dir.path().join("legality.table"), format!("{header}{table}")).unwrap();
    let out = Command::new(bin)
        .args(["validate", &fixture("time_attached.tum")])
        .env("TUMBUG_TABLES", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    std::fs::write(dir.path().join("legality.table"), "garbage\n").unwrap();
    let st = Command::new(bin)
        .args(["validate", &fixture("ws11.tum")])
        .env("TUMBUG_TABLES", dir.path())
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
}
