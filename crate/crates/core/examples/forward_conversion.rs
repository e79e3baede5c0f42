//! Steane code to 15-qubit code, with one injected error.
//!
//! Usage: cargo run --example forward_conversion [error] [branch]
//! e.g. `X:5 101` or `"Y11" 011`.

use rmconv::cli::parse_error_spec;
use rmconv::conversion::{bit_string, Converter, Direction, Mode};
use rmconv::engine::ForcedBranch;

fn main() -> rmconv::Result<()> {
    let mut args = std::env::args().skip(1);
    let error = args.next().unwrap_or_else(|| "X:5".into());
    let branch: Vec<bool> = args
        .next()
        .unwrap_or_else(|| "101".into())
        .chars()
        .map(|c| c == '1')
        .collect();

    let conv = Converter::new(Direction::Forward, 3, Mode::Full)?;
    println!("measurement plan:");
    for x in conv.plan().measurements() {
        println!("  {:<4} {:?}  {}", x.label, x.role, x.op);
    }
    for rule in &conv.plan().combination_rules {
        let members: Vec<&str> = rule
            .members
            .iter()
            .map(|&i| conv.plan().gauge_measurements[i].label.as_str())
            .collect();
        println!("  {} = {}", rule.target, members.join(" + "));
    }

    println!("\nfixing operators by gauge outcome:");
    for (i, op) in conv.fixing_table().iter().enumerate() {
        let flags: Vec<bool> = (0..3).map(|k| i >> k & 1 == 1).collect();
        println!("  {}  {}", bit_string(&flags), op);
    }

    let err = parse_error_spec(&error, 15)?;
    let out = conv.run(&err, &mut ForcedBranch::new(branch))?;
    println!("\n{}", out.report);
    println!("passed: {}", out.report.passed());
    Ok(())
}
