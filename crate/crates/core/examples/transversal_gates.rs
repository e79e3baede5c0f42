//! Transversal H on the Steane code and transversal T on the 15-qubit code.

use rmconv::harness::transversal_checks;

fn main() -> rmconv::Result<()> {
    let r = transversal_checks(7)?;
    println!("H on 7 qubits acts as logical H: fidelity {:.12}", r.hadamard_fidelity);
    println!("T on 15 qubits fixes encoded |0>: fidelity {:.12}", r.t_zero_fidelity);
    println!(
        "T on 15 qubits applied to encoded |+>: overlap with logical T|+> {:.6}, with logical T-dagger|+> {:.6}",
        r.t_fidelity, r.t_dagger_fidelity
    );
    println!("logical gate: {:?}", r.logical_t);
    Ok(())
}
