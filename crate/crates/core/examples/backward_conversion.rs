//! 15-qubit code back to the Steane code, including the discard of the
//! second block.
//!
//! Usage: cargo run --example backward_conversion [error] [mode]

use rmconv::cli::parse_error_spec;
use rmconv::codes::rm_code;
use rmconv::conversion::{bit_string, Converter, Direction, Mode};
use rmconv::engine::ForcedBranch;

fn main() -> rmconv::Result<()> {
    let mut args = std::env::args().skip(1);
    let err = parse_error_spec(&args.next().unwrap_or_else(|| "Z:5".into()), 15)?;
    let mode = match args.next().as_deref() {
        Some("ft") => Mode::Ft,
        _ => Mode::Full,
    };
    let conv = Converter::new(Direction::Backward, 3, mode)?;

    println!("fixing operators by gauge outcome:");
    for (i, op) in conv.fixing_table().iter().enumerate() {
        let flags: Vec<bool> = (0..3).map(|k| i >> k & 1 == 1).collect();
        println!("  {}  {}", bit_string(&flags), op);
    }

    let steane = rm_code(3)?;
    println!("\nerror {err}, {mode} mode:");
    for b in 0..8usize {
        let branch: Vec<bool> = (0..3).map(|k| b >> (2 - k) & 1 == 1).collect();
        let out = conv.run(&err, &mut ForcedBranch::new(branch))?;
        let r = &out.report;
        let clean = steane
            .generators()
            .all(|g| out.frame.eigenvalue(&g.op).ok().flatten() == Some(false));
        println!(
            "  branch {}  correction {:<40} kept {} qubits, residual {}, steane stabilizers all +1: {clean}",
            r.branch_outcomes,
            r.correction.to_string(),
            out.frame.n(),
            r.residual_error.as_ref().map_or("?".to_string(), |e| e.to_string()),
        );
    }
    Ok(())
}
