//! Runs every program in `examples/`; `cargo test` builds them alongside the tests.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "smith_normal_form",
    "group_cohomology",
    "takasu_pairs",
    "adamson_relative",
    "bredon_orbit_category",
    "nonabelian_h1",
    "equivariant_actions",
    "dimension_engine",
];

fn examples_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|deps| deps.parent()).unwrap().join("examples")
}

#[test]
fn examples_run_successfully() {
    let listed: Vec<String> = std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples"))
        .unwrap()
        .filter_map(|e| e.ok()?.path().file_stem()?.to_str().map(String::from))
        .collect();
    for name in &listed {
        assert!(EXAMPLES.contains(&name.as_str()), "{name} is not listed");
    }
    for name in EXAMPLES {
        let path = examples_dir().join(name);
        let out = Command::new(&path)
            .output()
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
