use std::path::PathBuf;
use std::process::{Command, Output};

fn relcohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcohom")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("relcohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn documented_examples() {
    let o = relcohom(&["reproduce", "ex-5.9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["takasu"].clone(), v["adamson"].clone(), v["bredon"].clone()), (4.into(), "inf".into(), "inf".into()));

    let o = relcohom(&["cohomology", "group", "--group", "C2", "--module", "trivial", "--max-degree", "4"]);
    assert_eq!(stdout(&o), "[Z, 0, Z/2, 0, Z/2]\n");

    let o = relcohom(&["snf", "--matrix", "[[2,4],[6,8]]"]);
    assert_eq!(stdout(&o), "diag(2, 4)\n");
}

#[test]
fn exit_codes_and_diagnostics() {
    let o = relcohom(&["cohomology", "group", "--group", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty() && !o.stderr.is_empty());
    let o = relcohom(&["cayley-ball", "--builtin", "c2-free", "--radius", "2", "--limits", "radius=1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = relcohom(&["snf", "--matrix", "[[1,2],[3]]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["reproduce", "ex-4.10", "--format", "json"][..],
        &["cohomology", "bredon", "--group", "S3", "--format", "json"],
        &["cohomology", "takasu", "--group", "S3", "--subgroup", "order=2", "--route", "both"],
        &["h1", "--all"],
        &["cohomology", "group", "--group", "C4", "--module", "battery", "--seed", "7"],
    ] {
        let a = relcohom(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, relcohom(args).stdout, "{args:?}");
    }
}

#[test]
fn input_documents() {
    let group = scratch(
        "c3.json",
        r#"{"order":3,"table":[[0,1,2],[1,2,0],[2,0,1]],"labels":["e","r","r2"]}"#,
    );
    let o = relcohom(&["cohomology", "group", "--group", &group, "--max-degree", "2"]);
    assert_eq!(stdout(&o), "[Z, 0, Z/3]\n");

    let complex = scratch(
        "complex.json",
        r#"{"kind":"complex","group":"C2","labels":["a","b","c"],"simplices":[[0,1],[1,2]],"generators":[[1,[2,1,0]]]}"#,
    );
    let o = relcohom(&["classify", "--input", &complex, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["consistent"], true);
    assert!(v["fixed_sets"].is_object());

    let graph = scratch(
        "path.json",
        r#"{"group":"C2","labels":["a","b","c"],"generators":[[1,[2,1,0]]],"edges":[[0,1],[1,2]]}"#,
    );
    let o = relcohom(&["spanning-tree", "--input", &graph, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);

    let axioms = scratch(
        "axioms.json",
        r#"[{"id":"user","statement":"cd(Q) <= 2","citation":"a user-supplied reference","claims":[{"type":"bound","quantity":{"kind":"cd","group":"Q"},"value":[0,2]}]}]"#,
    );
    let o = relcohom(&["derive", "cd(Q)", "--axioms", &axioms, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], serde_json::json!([0, 2]));
}

#[test]
fn schemas_are_valid_json() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema/v1");
    let mut n = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v["$id"].as_str().unwrap().starts_with("relcohom/v1/"), "{}", path.display());
        n += 1;
    }
    assert!(n >= 7);
}
