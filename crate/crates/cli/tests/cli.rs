use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const TREFOIL: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";
const EIGHT: &str = "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]";
const FLIPPED: &str = "PD[X(4,2,5,1), X(3,6,4,1), X(5,2,6,3)]";

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn altlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altlink")).args(args).output().unwrap()
}

fn run(text: &str, args: &[&str]) -> (i32, String) {
    let f = file(text);
    let path = f.path().to_str().unwrap();
    let mut full = vec![args[0], path];
    full.extend_from_slice(&args[1..]);
    let out = altlink(&full);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn check_prints_flags() {
    let (code, out) = run(EIGHT, &["check"]);
    assert_eq!(code, 0);
    assert_eq!(out, "connected=1 reduced=1 prime=1 alternating=1\n");
    let (_, out) = run("PD[X(2,2,1,1)]", &["check"]);
    assert!(out.contains("reduced=0"));
}

#[test]
fn present_prints_a_loadable_dump() {
    let (code, out) = run(TREFOIL, &["present"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("gen ")).count(), 5);
    assert_eq!(out.lines().filter(|l| l.starts_with("rel ")).count(), 3);
    let p = altlink_core::Presentation::from_dump(&out).unwrap();
    assert_eq!(p.symmetrized().len(), 24);
}

#[test]
fn reduce_word_shortens_relators() {
    let (code, out) = run(TREFOIL, &["reduce-word", "3 -1 5 -2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3 -1 5 -2\n");
    let (_, dump) = run(TREFOIL, &["present"]);
    let rel = dump.lines().find_map(|l| l.strip_prefix("rel ")).unwrap().to_string();
    let (code, out) = run(TREFOIL, &["reduce-word", &rel]);
    assert_eq!(code, 0);
    assert_eq!(out, "\n");
    let (code, out) = run(TREFOIL, &["reduce-word", &format!("{rel} 5")]);
    assert_eq!(code, 0);
    assert_eq!(out, "5\n");
}

#[test]
fn reduce_word_rejects_bad_letters() {
    assert_eq!(run(TREFOIL, &["reduce-word", "9"]).0, 2);
    assert_eq!(run(TREFOIL, &["reduce-word", "0"]).0, 2);
    assert_eq!(run(TREFOIL, &["reduce-word", "x"]).0, 2);
    assert_eq!(run(FLIPPED, &["reduce-word", "1"]).0, 3);
}

#[test]
fn certify_text_and_json() {
    let (code, out) = run(TREFOIL, &["certify"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("verdict: Nontrivial\n"));
    assert!(out.contains("evidence: factor 0 component 0: "));

    let (code, out) = run(TREFOIL, &["certify", "--json", "--normal-form"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "Nontrivial");
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["factors"][0]["small_cancellation"]["C4"], true);
    assert_eq!(v["factors"][0]["longitudes"][0]["normal_form"]["found"], true);
    assert!(!v["evidence"]["geodesic_word"].as_str().unwrap().is_empty());
}

#[test]
fn certify_is_deterministic() {
    let a = run(EIGHT, &["certify", "--json"]).1;
    let b = run(EIGHT, &["certify", "--json"]).1;
    assert_eq!(a, b);
}

#[test]
fn certify_accepts_structured_input() {
    let json = r#"{"crossings": [[1,4,2,5],[3,6,4,1],[5,2,6,3]], "circles": 0}"#;
    assert_eq!(
        run(json, &["certify", "--json"]).1,
        run(TREFOIL, &["certify", "--json"]).1
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(FLIPPED, &["certify"]).0, 3);
    assert_eq!(run("PD[O]", &["certify"]).0, 0);
    assert_eq!(run("PD[X(1,2,3)]", &["certify"]).0, 2);
    assert_eq!(run("PD[O, O]", &["present"]).0, 3);
    assert_eq!(altlink(&["certify", "/nonexistent/file.pd"]).status.code(), Some(2));
    assert_eq!(altlink(&["frobnicate"]).status.code(), Some(2));
}
