//! Every single-qubit error through every gauge branch, both directions and
//! both modes.
//!
//! Usage: cargo run --release --example exhaustive_sweep [m]

use std::time::Instant;

use rmconv::conversion::{Direction, Mode};
use rmconv::harness::sweep;

fn main() -> rmconv::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    for d in [Direction::Forward, Direction::Backward] {
        for mode in [Mode::Full, Mode::Ft] {
            let start = Instant::now();
            let r = sweep(m, d, mode)?;
            println!(
                "m = {m}  {d:<8} {mode:<4}  {}/{} pass  max residual weight {}  identity-fix clean branches {}  ({:.2?})",
                r.totals.passed,
                r.totals.cases,
                r.totals.max_residual_weight,
                r.totals.clean_identity_fixes,
                start.elapsed()
            );
            for c in r.failures().take(3) {
                println!("{}", c.report);
            }
        }
    }
    Ok(())
}
