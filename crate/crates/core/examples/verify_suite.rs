//! Run the verification suite on a seeded zoo and print the summary.
//!
//!     cargo run --example verify_suite -- 40

use dgwb::harness::{run_suite, SuiteConfig};

fn main() {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let start = std::time::Instant::now();
    let report = run_suite(&SuiteConfig::new(0, count));
    print!("{}", report.summary_text());
    let slow = report.checks.iter().max_by_key(|c| c.millis);
    if let Some(c) = slow {
        println!("slowest: {} [{}] {} ms", c.check, c.instance, c.millis);
    }
    println!("elapsed {:.1?}", start.elapsed());
}
