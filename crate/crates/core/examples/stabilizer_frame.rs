//! The stabilizer engine on its own: error propagation into generator signs,
//! a random measurement and splitting off a block.

use rmconv::engine::{prepare_extended, SeededBranch};
use rmconv::pauli::PauliOperator;

fn main() -> rmconv::Result<()> {
    let mut frame = prepare_extended(3)?;
    frame.apply_pauli(&PauliOperator::parse(15, "Y3")?)?;
    println!("after Y3, flipped generators:");
    for g in frame.generators().iter().filter(|g| g.is_negative() == Some(true)) {
        println!("  {g}");
    }

    let gauge = PauliOperator::parse(15, "Z1 Z3 Z9 Z11")?;
    let r = frame.measure(&gauge, &mut SeededBranch::new(5))?;
    println!("measured {gauge}: outcome {} (deterministic: {})", u8::from(r.outcome), r.deterministic);
    let again = frame.measure(&gauge, &mut SeededBranch::new(6))?;
    println!("repeated: outcome {} (deterministic: {})", u8::from(again.outcome), again.deterministic);
    frame.check_invariants()?;

    let clean = prepare_extended(3)?;
    let steane = clean.restrict(0, 7)?;
    println!("first block of a clean extended state:");
    for g in steane.generators() {
        println!("  {g}");
    }
    println!("  logical X {}", steane.logical_x());
    Ok(())
}
