use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn repo(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn cmd() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cbiont"));
    c.env_remove("CBIONT_BASE_IRI");
    c
}

fn run(args: &[&str]) -> Output {
    cmd().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = cmd()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn schema_export_matches_shipped_file() {
    let a = run(&["schema", "export", "--format", "turtle"]);
    let b = run(&["schema", "export"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, std::fs::read(repo("cbiont.ttl")).unwrap());
    let nt = run(&["schema", "export", "--format", "ntriples"]);
    assert_eq!(text(&nt.stdout).lines().count(), 115);
}

#[test]
fn exported_schema_validates() {
    for format in ["turtle", "ntriples"] {
        let schema = run(&["schema", "export", "--format", format]).stdout;
        let out = run_stdin(&["validate", "--kb", "-"], &schema);
        assert_eq!(out.status.code(), Some(0), "{format}: {}", text(&out.stderr));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn bad_remarks_exit_3() {
    let out = run(&["validate", "--kb", s(&repo("fixtures/validation_bad.ttl"))]);
    assert_eq!(out.status.code(), Some(3));
    let lines: Vec<String> = text(&out.stdout).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("enumeration_violation\t<http://bi4people.org/data/cbiont/remark/bad1>\t"));
    assert!(lines[0].contains("\"Note\""));

    let json = run(&["validate", "--kb", s(&repo("fixtures/validation_bad.ttl")), "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert_eq!(rows[3]["kind"], "datatype_violation");
    assert_eq!(rows[3]["property"], "http://bi4people.org/ontology/cbiont#hasDescription");
}

#[test]
fn single_note_remark_gives_one_violation() {
    let kb = "@prefix cbiont: <http://bi4people.org/ontology/cbiont#> .\n\
              <http://e/r> a cbiont:Remark ; cbiont:hasRemark \"Note\" .\n";
    let out = run_stdin(&["validate", "--kb", "-"], kb.as_bytes());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(text(&out.stdout).lines().count(), 1);
}

#[test]
fn warnings_fail_only_when_pedantic() {
    let kb = b"<http://e/a> <http://e/undeclared> <http://e/b> .\n";
    let lenient = run_stdin(&["validate", "--kb", "-"], kb);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(text(&lenient.stdout).starts_with("undeclared_term\t<http://e/a>\t<http://e/undeclared>"));
    let strict = run_stdin(&["validate", "--kb", "-", "--pedantic"], kb);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["frobnicate"][..],
        &["schema", "export", "--format", "rdfxml"],
        &["query", "--kb", "x.ttl"],
        &["query", "--kb", "x.ttl", "--cq", "0"],
        &["query", "--kb", "x.ttl", "--cq", "1", "--query", "q.rq"],
        &["validate", "--kb", "x.ttl", "--format", "xml"],
        &["ingest", "--input", "x.json"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    let bad_session = run(&["query", "--kb", s(&repo("cbiont.ttl")), "--cq", "1", "--session", "not an iri"]);
    assert_eq!(bad_session.status.code(), Some(1));
}

#[test]
fn input_errors_exit_2_and_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.ttl");
    std::fs::write(&broken, "<http://e/a> <http://e/b>\n  1.5 .\n").unwrap();
    let out = run(&["infer", "--kb", s(&broken), "--out", s(&dir.path().join("o.ttl"))]);
    assert_eq!(out.status.code(), Some(2));
    let err = text(&out.stderr);
    assert!(err.contains("broken.ttl:2:3: lexical error"), "{err}");

    let missing = run(&["validate", "--kb", s(&dir.path().join("nope.ttl"))]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(text(&missing.stderr).contains("nope.ttl"));

    let json = dir.path().join("s.json");
    std::fs::write(&json, "{\n  \"id\": \"x\",\n  oops\n}").unwrap();
    let out = run(&["ingest", "--input", s(&json), "--kb-out", s(&dir.path().join("kb.ttl"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("s.json:3:3"), "{}", text(&out.stderr));

    let q = dir.path().join("q.rq");
    std::fs::write(&q, "SELECT ?z WHERE { ?x a ?y }\n").unwrap();
    let out = run(&["query", "--kb", s(&repo("cbiont.ttl")), "--query", s(&q)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("q.rq:1:8: semantic error"), "{}", text(&out.stderr));
}

#[test]
fn partial_ingest_writes_valid_sessions_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("kb.ttl");
    let out = run(&["ingest", "--input", s(&repo("fixtures/mixed_sessions.json")), "--kb-out", s(&kb)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("/remarks/0/author_id"));
    let written = std::fs::read_to_string(&kb).unwrap();
    assert!(written.contains("session/good"));
    assert!(!written.contains("session/bad"));
}

#[test]
fn merge_with_accumulates() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.ttl");
    let merged = dir.path().join("merged.ttl");
    assert!(run(&["ingest", "--input", s(&repo("fixtures/two_sessions.json")), "--kb-out", s(&first)]).status.success());
    assert!(run(&[
        "ingest",
        "--input",
        s(&repo("fixtures/reference_session.json")),
        "--kb-out",
        s(&merged),
        "--merge-with",
        s(&first)
    ])
    .status
    .success());
    let out = run(&["query", "--kb", s(&merged), "--cq", "8"]);
    let rows: Vec<String> = text(&out.stdout).lines().map(str::to_owned).collect();
    assert_eq!(rows.len(), 4, "{rows:?}");
    assert_eq!(rows[0], "?session\t?phase");
}

#[test]
fn query_output_formats() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("kb.ttl");
    assert!(run(&["ingest", "--input", s(&repo("fixtures/reference_session.json")), "--kb-out", s(&kb)]).status.success());
    let session = "http://bi4people.org/data/cbiont/session/lyon-2022-03";
    let out = run(&["query", "--kb", s(&kb), "--cq", "8", "--session", session]);
    assert_eq!(text(&out.stdout), "?phase\n<http://bi4people.org/data/cbiont/phase/decision>\n");
    let out = run(&["query", "--kb", s(&kb), "--cq", "1", "--session", session, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["variables"], serde_json::json!(["place"]));
    assert_eq!(v["rows"][0]["place"], "<http://bi4people.org/data/cbiont/place/Lyon%20Campus>");

    let q = dir.path().join("q.rq");
    std::fs::write(&q, "SELECT ?r WHERE { ?r cbiont:hasRemark ?k FILTER(?k IN (\"Question\", \"Comment\")) }").unwrap();
    let out = run(&["query", "--kb", s(&kb), "--query", s(&q)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout).lines().count(), 3);
}

#[test]
fn base_iri_override_affects_minting_only() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("kb.ttl");
    let out = cmd()
        .args(["ingest", "--input", s(&repo("fixtures/reference_session.json")), "--kb-out", s(&kb)])
        .env("CBIONT_BASE_IRI", "https://example.org/kb/")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", text(&out.stderr));
    let written = std::fs::read_to_string(&kb).unwrap();
    assert!(written.contains("@prefix cbidata: <https://example.org/kb/> ."));
    assert!(written.contains("<https://example.org/kb/session/lyon-2022-03>"));
    assert!(!written.contains("bi4people.org/data"));
    assert!(written.contains("<http://bi4people.org/ontology/cbiont#"));

    let bad = cmd()
        .args(["ingest", "--input", s(&repo("fixtures/reference_session.json")), "--kb-out", s(&kb)])
        .env("CBIONT_BASE_IRI", "https://example.org/kb")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
