//! Cost of a logical T gate via conversion, against the baseline that
//! measures every stabilizer of the 15-qubit code.
//!
//! Usage: cargo run --example cost_model [config.json]

use std::path::PathBuf;

use rmconv::conversion::{Converter, Direction, Mode};
use rmconv::cost::{cost_adp14, cost_ours, count_resources, expected_fix_weight, CostConfig};

fn main() -> rmconv::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/unit_costs.json"));
    let config = CostConfig::load(&path)?;

    for d in [Direction::Forward, Direction::Backward] {
        let conv = Converter::new(d, 3, Mode::Ft)?;
        let (count, weight) = count_resources(conv.plan());
        println!(
            "{d:<8}: {count} measurements, total weight {weight}, mean fixing weight {}",
            expected_fix_weight(&conv)
        );
    }
    println!();

    for model in &config.models {
        let base = cost_adp14(model)?;
        let ours = cost_ours(model)?;
        println!("{base}\n{ours}");
        println!("saving {:.3}\n", base.total - ours.total);
    }
    Ok(())
}
