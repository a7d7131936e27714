//! The command-line binary: exit codes, envelopes, certificates and corpus runs.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn aqcalc(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqcalc")).args(args).current_dir(cwd).output().unwrap()
}

fn write(dir: &Path, name: &str, src: &str) {
    std::fs::write(dir.join(name), src).unwrap();
}

/// The envelopes of a `run`, printed one after another.
fn envelopes(out: &[u8]) -> Vec<Value> {
    serde_json::Deserializer::from_slice(out).into_iter::<Value>().map(Result::unwrap).collect()
}

const SMALL: &str = "ring R = QQ[x, y] / (x^2, x*y, y^2);\njob classify R cap = 4;\njob betti R cap = 3;\n";

#[test]
fn envelope_has_the_fixed_keys() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.aq", SMALL);
    let out = aqcalc(&["run", "a.aq"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let envs = envelopes(&out.stdout);
    assert_eq!(envs.len(), 2);
    for e in &envs {
        let keys: Vec<&str> = e.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["caps", "certificates", "job", "result", "tool", "version"]);
        assert_eq!(e["tool"], "aqcalc");
    }
    assert_eq!(envs[0]["result"]["qualifiers"], serde_json::json!(["verified to degree 4"]));
    assert_eq!(envs[0]["result"]["flags"]["gorenstein"]["value"], false);
    assert_eq!(envs[1]["result"]["betti"], serde_json::json!([[0, 0, 1], [1, 1, 2], [2, 2, 4], [3, 3, 8]]));
}

#[test]
fn output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.aq", SMALL);
    let first = aqcalc(&["run", "a.aq"], dir.path()).stdout;
    let second = aqcalc(&["run", "a.aq"], dir.path()).stdout;
    assert!(!first.is_empty());
    assert_eq!(first, second);
    let text = aqcalc(&["run", "a.aq", "--format", "text"], dir.path());
    assert!(String::from_utf8_lossy(&text.stdout).contains("result.flags.ci.value: false"));
}

#[test]
fn certificates_are_named_by_their_hash() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.aq", SMALL);
    let out = aqcalc(&["run", "a.aq", "--out", "report.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let envs = envelopes(&std::fs::read(dir.path().join("report.json")).unwrap());
    let refs = envs[0]["certificates"].as_object().unwrap();
    assert!(refs.contains_key("socle") && refs.contains_key("deviations"));
    for name in refs.values() {
        let name = name.as_str().unwrap();
        let content = std::fs::read(dir.path().join(name)).unwrap();
        assert_eq!(format!("{}.json", hex::encode(Sha256::digest(&content))), name);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "syntax.aq", "ring R = QQ[x, y] / (x^2 y);\n");
    let out = aqcalc(&["run", "syntax.aq"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:26: [P-SYNTAX]"), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(aqcalc(&["run", "missing.aq"], d).status.code(), Some(2));

    // x acts nontrivially on ℓ[y], so the truncation prediction fails.
    write(d, "broken.aq", "dga L over QQ gens (y:2);\njob truncation L at = y k = 1 cap = 6;\n");
    let out = aqcalc(&["run", "broken.aq"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(!envelopes(&out.stdout)[0]["job"]["violations"].as_array().unwrap().is_empty());

    // Above degree two the profile needs a polynomial base.
    write(d, "open.aq", "ring B = QQ[x, y] / (x^2);\nring C = QQ[x, y] / (x^2, y^2);\njob profile C over = B cap = 4;\n");
    assert_eq!(aqcalc(&["run", "open.aq"], d).status.code(), Some(0));
    assert_eq!(aqcalc(&["run", "open.aq", "--strict"], d).status.code(), Some(3));
}

#[test]
fn characteristic_override() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "e.aq", "dga F over QQ gens (x:1);\njob classify F cap = 6;\n");
    for p in ["0", "2", "3"] {
        let out = aqcalc(&["run", "e.aq", "--char", p], dir.path());
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(envelopes(&out.stdout)[0]["result"]["flags"]["h_ci"]["value"], true, "char {p}");
    }
    write(dir.path(), "bad.aq", "ring R = QQ[x];\n");
    assert_eq!(aqcalc(&["run", "bad.aq", "--char", "4"], dir.path()).status.code(), Some(2));
}

#[test]
fn corpus_isolates_parse_failures() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("corpus");
    std::fs::create_dir(&c).unwrap();
    write(&c, "a.aq", SMALL);
    write(&c, "b.aq", "ring P = QQ[x];\njob classify P;\n");
    write(&c, "c.aq", "ring Q = QQ[x] / (y);\n");
    write(&c, "notes.txt", "ignored");
    let one = aqcalc(&["corpus", "corpus", "--jobs", "1", "--cap", "4"], dir.path());
    let four = aqcalc(&["corpus", "corpus", "--jobs", "4", "--cap", "4"], dir.path());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    let items = v["result"]["items"].as_object().unwrap();
    assert_eq!(items.len(), 3);
    assert_eq!(items["a.aq"]["status"], "ok");
    assert_eq!(items["b.aq"]["jobs"][0]["report"]["result"]["flags"]["regular"]["value"], true);
    assert_eq!(items["c.aq"]["status"], "parse_error");
    assert_eq!(items["c.aq"]["diagnostic"]["code"], "P-NAME");
    assert_eq!(v["result"]["summary"]["parse_failures"], 1);
    assert_eq!(v["result"]["implications"]["checked"], 2);
}

#[test]
fn check_prints_a_normal_form() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "a.aq",
        "ring R = QQ[x, y:2] / (x^2 - y, (x^2 + y)*y) order lex;\ndga A over QQ gens (x:1, y:2 divided, z:4) diff (z -> x*y);\njob ext_window A window = [-4, 0];\n",
    );
    let out = aqcalc(&["check", "a.aq"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let printed = String::from_utf8(out.stdout).unwrap();
    write(dir.path(), "b.aq", &printed);
    let again = aqcalc(&["check", "b.aq"], dir.path());
    assert_eq!(String::from_utf8(again.stdout).unwrap(), printed);
    assert!(printed.contains("(x^2 + y)*y"));
}
