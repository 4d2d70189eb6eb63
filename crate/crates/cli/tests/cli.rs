use std::path::{Path, PathBuf};
use std::process::Command;

use contractio::random::random_group;
use contractio_cli::dsl::parse;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run(args: &[&str], file: &Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_contractio"))
        .args(args)
        .arg(file)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn printed_documents_parse_back() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    for e in std::fs::read_dir(dir).unwrap() {
        let src = std::fs::read_to_string(e.unwrap().path()).unwrap();
        let doc = parse(&src).unwrap();
        let again = parse(&doc.to_string()).unwrap();
        assert_eq!(doc.to_string(), again.to_string());
        assert_eq!(doc.groups.len(), again.groups.len());
        for (a, b) in doc.groups.iter().zip(&again.groups) {
            assert_eq!(a.group.blocks(), b.group.blocks());
        }
    }
}

#[test]
fn random_groups_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let g = random_group(&mut rng, 4);
        let body: Vec<String> = g.blocks().iter().map(|b| b.to_string()).collect();
        let src = format!("group G{i} = {}\n", body.join(" * "));
        let doc = parse(&src).unwrap_or_else(|e| panic!("{src}: {e}"));
        assert_eq!(doc.groups[0].group.blocks(), g.blocks());
    }
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let ok = write(d, "ok.cg", "group A = shift(C2) * companion(p=3, poly=X^2+3)\n");
    let bad = write(d, "bad.cg", "group A = linear(p=3, matrix=[[1,0],[0,3]])\n");
    let syntax = write(d, "syntax.cg", "group A = shift(C2\n");
    let s4 = write(d, "s4.cg", "group A = shift(S4)\n");
    let unc = write(d, "unc.cg", "group A = companion(p=3, poly=X^4+9)\n");

    for cmd in ["check", "analyze", "structure", "verify"] {
        assert_eq!(run(&[cmd], &ok).0, 0, "{cmd}");
    }
    assert_eq!(run(&["classify"], &ok).0, 2);
    let (code, _, err) = run(&["check"], &bad);
    assert_eq!(code, 1);
    assert!(err.contains("1:"), "{err}");
    assert_eq!(run(&["check"], &syntax).0, 1);
    assert_eq!(run(&["classify"], &s4).0, 2);
    assert_eq!(run(&["classify", "--strict"], &unc).0, 3);
    assert_eq!(run(&["classify"], &unc).0, 0);
}

#[test]
fn flags_override_document_settings() {
    let tmp = tempfile::tempdir().unwrap();
    let f = write(tmp.path(), "s.cg", "set seed = 3\ngroup A = shift(C2)\n");
    let (_, out, _) = run(&["--format", "structured", "check"], &f);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 3);
    let (_, out, _) = run(&["--format", "structured", "--seed", "9", "check"], &f);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 9);
}
