//! Runs the eight reproduction criteria and prints one line each.
//! Exits nonzero if any criterion fails.

use qcluster::suite::{criterion, SuiteConfig, CRITERIA};

fn main() {
    // `cargo test -- <filter>` passes extra arguments; only ids are understood
    let wanted: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    println!("\nacceptance criteria");
    for (id, _) in CRITERIA {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let r = criterion(id, &cfg).expect("known id");
        println!("{r}");
        if !r.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} failed\n", failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
