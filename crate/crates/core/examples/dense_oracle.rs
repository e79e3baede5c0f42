//! Replays random conversions on dense 15-qubit state vectors and compares
//! them with the symbolic engine.
//!
//! Usage: cargo run --release --example dense_oracle [trials] [seed]

use rmconv::harness::cross_validate;

fn main() -> rmconv::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(100);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let summary = cross_validate(trials, seed)?;
    for t in summary.records.iter().take(10) {
        println!(
            "{:<8} {:<4} error {:<4} branch {}  fidelity {:.12}  purity {:.12}",
            t.direction.to_string(),
            t.mode.to_string(),
            t.error.to_string(),
            t.branch,
            t.fidelity,
            t.purity
        );
    }
    println!(
        "{}/{} trials agree, min fidelity {:.3e} below one",
        summary.passed,
        summary.trials,
        1.0 - summary.min_fidelity
    );
    Ok(())
}
