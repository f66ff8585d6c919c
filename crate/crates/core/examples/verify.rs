//! Runs the reproducibility criteria, optionally only the ones given as
//! arguments.
//!
//!     cargo run --release --example verify -- 1 2 7

use hermlie::verify::{criterion, CRITERIA};

fn main() {
    let ids: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let selected: Vec<_> = if ids.is_empty() { CRITERIA.iter().collect() } else { ids.iter().filter_map(|&i| criterion(i)).collect() };
    for c in selected {
        let r = c.run();
        println!("{:>2} {} {} — {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
}
