//! Generator matrices and stabilizer lists for RM(1,m) and the extended code.
//!
//! Usage: cargo run --example dump_codes [m]

use rmconv::codes::{extended_code, generator_matrix, h_tilde, rm_code, subsystem_spec};
use rmconv::pauli::PauliKind;

fn main() -> rmconv::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);

    let g = generator_matrix(m)?;
    println!("G(1,{m}):\n{g}\n");
    let h = h_tilde(m + 1)?;
    println!("H(1,{}):\n{h}\n", m + 1);
    let product = h.mat_mul_t(&generator_matrix(m + 1)?)?;
    println!("H(1,{}) * G(1,{})^T is zero: {}\n", m + 1, m + 1, product.is_zero());

    for code in [rm_code(m)?, rm_code(m + 1)?, extended_code(m)?] {
        code.check()?;
        println!("{} on {} qubits:", code.label, code.n);
        for g in code.generators() {
            println!("  {:<18} {}", g.label(), g.op);
        }
        println!("  logical X          {}", code.logical_x);
        println!("  logical Z          {}\n", code.logical_z);
    }

    let spec = subsystem_spec(m)?;
    println!("shared subsystem code: {} stabilizers", spec.stabilizers.len());
    for kind in [PauliKind::X, PauliKind::Z] {
        for g in spec.gauge_of_kind(kind) {
            println!("  gauge {:<18} {}", g.label(), g.op);
        }
    }
    Ok(())
}
