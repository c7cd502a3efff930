//! Inject each seeded fault and count the failures it causes.
//!
//!     cargo run --example mutation_sweep -- 8

use dgwb::harness::{run_suite, SuiteConfig};
use dgwb::mutation::Mutant;

fn main() {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    for m in Mutant::ALL {
        let mut cfg = SuiteConfig::new(0, count);
        cfg.mutant = Some(m);
        let r = run_suite(&cfg);
        let mut failing: Vec<&str> = r.checks.iter().filter(|c| c.verdict.is_fail()).map(|c| c.check.as_str()).collect();
        failing.dedup();
        println!("{m:?}: {} failures in {:?}", r.totals().fail, failing);
    }
}
