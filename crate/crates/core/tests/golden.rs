//! Byte-for-byte comparison against committed outputs.
//! Regenerate with `DGWB_BLESS=1 cargo test --test golden`.

use std::path::PathBuf;

use dgwb::harness::{generate_zoo, run_suite, Budgets, SuiteConfig};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn compare(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("DGWB_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from the committed file");
}

#[test]
fn seed0_instance() {
    let z = &generate_zoo(0, 1, &Budgets::default())[0];
    let mut s = serde_json::to_string_pretty(&z.to_json()).unwrap();
    s.push('\n');
    compare("zoo_seed0_instance.json", &s);
}

#[test]
fn seed0_suite() {
    let r = run_suite(&SuiteConfig::new(0, 4));
    compare("suite_seed0_count4.json", &r.to_json_string());
}
