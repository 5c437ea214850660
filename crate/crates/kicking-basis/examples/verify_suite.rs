//! Runs the full verification suite at reduced bounds.
//!
//! `cargo run --release --example verify_suite -- 5`

use kicking_basis::cli::suite::{run_all, SuiteBounds};

fn main() {
    let nmax = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let results = run_all(&SuiteBounds::capped(nmax));
    for r in &results {
        println!("{r}");
    }
    if results.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
}
