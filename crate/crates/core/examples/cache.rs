//! The content-addressed cache: each Smith form or resolution is stored as
//! one JSON file named after the digest of its input.
//!
//!     DGWB_CACHE_DIR=/tmp/dgwb-cache cargo run --example cache

use dgwb::cache::{cached_smith, Cache, CACHE_ENV};
use dgwb::{Matrix, RingSpec};

fn main() -> dgwb::Result<()> {
    let dir = std::env::var(CACHE_ENV).unwrap_or_else(|_| {
        let d = std::env::temp_dir().join("dgwb-cache-example");
        std::env::set_var(CACHE_ENV, &d);
        d.display().to_string()
    });
    let cache = Cache::new(&dir)?;
    let a = Matrix::from_i64(RingSpec::Integers, 2, 3, &[6, 4, 2, 9, 12, 3]);
    let key = Cache::key("smith", &dgwb::json::matrix_to_json(&a));
    let first = cached_smith(&a)?;
    let second = cached_smith(&a)?;
    println!("cache dir {}", cache.dir().display());
    println!("digest {key}: invariant factors {}", first["invariant_factors"]);
    println!("second lookup identical: {}", first == second);
    let files = std::fs::read_dir(cache.dir())?.count();
    println!("{files} file(s) in the cache");
    Ok(())
}
