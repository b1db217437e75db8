//! Frozen example bundles. Set `RELCOHOM_BLESS=1` to rewrite them after an
//! intentional change.

use std::path::PathBuf;

use relcohom::cli::{run, EXIT_OK};
use relcohom::dimension_engine::ExampleBundle;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn cases() -> Vec<(String, Vec<String>)> {
    let mut v: Vec<(String, Vec<String>)> = [
        "ex-2.15", "ex-5.2", "ex-4.10", "ex-4.11", "ex-4.15", "ex-5.6", "ex-5.9", "ex-5.10",
    ]
    .iter()
    .map(|id| (id.to_string(), vec![id.to_string()]))
    .collect();
    for n in 1..=5 {
        v.push((format!("ex-4.16-n{n}"), vec!["ex-4.16".into(), "-n".into(), n.to_string()]));
    }
    v
}

fn render(args: &[String]) -> String {
    let mut argv = vec!["relcohom".to_string(), "reproduce".into()];
    argv.extend(args.iter().cloned());
    argv.extend(["--format".into(), "json".into()]);
    let (code, out, err) = run(argv);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

#[test]
fn bundles_match_golden_files() {
    let bless = std::env::var_os("RELCOHOM_BLESS").is_some();
    for (name, args) in cases() {
        let path = golden_dir().join(format!("{name}.json"));
        let got = render(&args);
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(got == want, "{name} differs from {}", path.display());
    }
}

#[test]
fn golden_files_deserialize_and_replay() {
    for (name, _) in cases() {
        let text = std::fs::read_to_string(golden_dir().join(format!("{name}.json"))).unwrap();
        let bundle: ExampleBundle = serde_json::from_str(&text).unwrap();
        assert!(bundle.replays().unwrap(), "{name}: a stored trace does not replay");
        for fact in &bundle.facts {
            for leaf in &fact.trace.computations {
                assert!(!leaf.result.to_string().contains("\"inf\""), "{name}: leaf {} reports inf", leaf.id);
            }
        }
    }
}
