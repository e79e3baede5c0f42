//! The random gauge outcomes of a forward conversion, enumerated directly on
//! the stabilizer engine.

use rmconv::conversion::{build_plan, Converter, Direction, Mode};
use rmconv::engine::{branch_enumerate, prepare_extended};

fn main() -> rmconv::Result<()> {
    let m = 3;
    let frame = prepare_extended(m)?;
    let plan = build_plan(Direction::Forward, m, Mode::Ft)?;
    let ops: Vec<_> = plan.measurements().map(|x| x.op.clone()).collect();
    let branches = branch_enumerate(&frame, &ops)?;
    println!("{} branches from {} measurements", branches.len(), ops.len());

    let conv = Converter::new(Direction::Forward, m, Mode::Ft)?;
    let mut identity = 0;
    for b in &branches {
        let bits: String = b.outcomes.iter().map(|o| if *o { '1' } else { '0' }).collect();
        let fix = conv.fixing_operator(&b.outcomes[..m]);
        if fix.is_identity() {
            identity += 1;
        }
        println!("  outcomes {bits}  fixing operator {fix}");
    }
    println!("{identity} of {} branches need no fixing", branches.len());
    Ok(())
}
