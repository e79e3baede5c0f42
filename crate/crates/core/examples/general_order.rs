//! Measurement plans for RM(1,m) <-> RM(1,m+1) at several orders.
//!
//! Usage: cargo run --release --example general_order [max_m]

use rmconv::conversion::{build_plan, Direction, Mode, Role};

fn main() -> rmconv::Result<()> {
    let max_m: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    println!("{:>2}  {:<9} {:<4} {:>5} {:>8} {:>7}  weights", "m", "direction", "mode", "count", "unsplit", "weight");
    for m in 3..=max_m {
        for d in [Direction::Forward, Direction::Backward] {
            for mode in [Mode::Ft, Mode::Full] {
                let plan = build_plan(d, m, mode)?;
                let weights: Vec<String> = plan
                    .measurements()
                    .map(|x| match x.role {
                        Role::Gauge => format!("g{}", x.op.weight()),
                        Role::SplitHalf => format!("s{}", x.op.weight()),
                        Role::Diagnostic => format!("d{}", x.op.weight()),
                        Role::Remainder => x.op.weight().to_string(),
                    })
                    .collect();
                println!(
                    "{m:>2}  {d:<9} {mode:<4} {:>5} {:>8} {:>7}  {}",
                    plan.measurement_count(),
                    plan.unsplit_count(),
                    plan.total_weight(),
                    weights.join(" ")
                );
            }
        }
    }
    println!("\ng = gauge row, s = half of a split remainder, d = diagnostic row");
    Ok(())
}
