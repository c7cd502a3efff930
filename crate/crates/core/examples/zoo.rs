//! Print the first instances of a seeded zoo with their digests.
//!
//!     cargo run --example zoo -- 7 5

use dgwb::harness::{generate_zoo, Budgets};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let seed = args.next().flatten().unwrap_or(0);
    let count = args.next().flatten().unwrap_or(5) as usize;
    for z in generate_zoo(seed, count, &Budgets::default()) {
        let lifts: Vec<String> = z.ideal_lifts.iter().map(|v| v.to_string()).collect();
        println!(
            "#{} {}  {}  ideal {:?} ({})  module basis {}",
            z.index,
            z.digest(),
            z.dg_ring,
            z.ideal_kind,
            lifts.join(", "),
            z.module.basis().len()
        );
    }
}
