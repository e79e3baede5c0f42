//! Gauge-fixing operators: Paulis that flip a chosen subset of gauge outcomes
//! while leaving every other stabilizer and both logicals untouched.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{PauliKind, PauliOperator};

/// Kernels up to this dimension are searched exhaustively.
const EXHAUSTIVE_KERNEL_DIM: usize = 20;

/// Where candidate fixing operators may live.
#[derive(Clone, Debug)]
pub enum SearchSpace {
    /// Any operator supported inside the mask.
    Qubits(BitVector),
    /// Sums of the given supports.
    Span(Vec<BitVector>),
}

impl SearchSpace {
    fn basis(&self) -> Vec<BitVector> {
        match self {
            SearchSpace::Qubits(mask) => mask
                .support()
                .map(|q| BitVector::from_indices(mask.len(), [q]))
                .collect(),
            SearchSpace::Span(rows) => rows.clone(),
        }
    }
}

/// The part of `op` that decides whether it commutes with a `kind` operator.
fn opposite_part(op: &PauliOperator, kind: PauliKind) -> &BitVector {
    match kind {
        PauliKind::X => op.z(),
        PauliKind::Z => op.x(),
    }
}

fn lighter(a: &BitVector, b: &BitVector) -> bool {
    a.weight() < b.weight() || (a.weight() == b.weight() && a.cmp_support(b).is_lt())
}

/// Finds a `kind` operator inside `space` that anticommutes with exactly the
/// flagged `gauge_rows` and commutes with every operator in `commute_with`.
///
/// Among all solutions the lightest is returned, ties broken by the
/// lexicographically smallest support.
pub fn solve_fixing_operator(
    kind: PauliKind,
    gauge_rows: &[PauliOperator],
    flags: &[bool],
    commute_with: &[PauliOperator],
    space: &SearchSpace,
) -> Result<PauliOperator> {
    assert_eq!(gauge_rows.len(), flags.len(), "one flag per gauge row");
    let flagged = || -> Vec<usize> {
        flags
            .iter()
            .enumerate()
            .filter(|(_, f)| **f)
            .map(|(i, _)| i + 1)
            .collect()
    };
    let basis = space.basis();
    let n = match basis.first() {
        Some(b) => b.len(),
        None if flags.iter().any(|f| *f) => return Err(Error::NoFixingOperator(flagged())),
        None => gauge_rows.first().or(commute_with.first()).map_or(0, PauliOperator::n),
    };

    let constraints: Vec<(&BitVector, bool)> = gauge_rows
        .iter()
        .zip(flags.iter().copied())
        .chain(commute_with.iter().map(|op| (op, false)))
        .map(|(op, t)| (opposite_part(op, kind), t))
        .collect();

    // basis coefficients c must satisfy A c = t with A[k][i] = basis_i · r_k
    let columns: Vec<BitVector> = basis
        .iter()
        .map(|b| BitVector::from_bools(&constraints.iter().map(|(r, _)| b.dot(r)).collect::<Vec<_>>()))
        .collect();
    let columns = BitMatrix::from_rows(constraints.len(), columns)?;
    let target = BitVector::from_bools(&constraints.iter().map(|(_, t)| *t).collect::<Vec<_>>());
    let coeffs = columns
        .solve(&target)
        .ok_or_else(|| Error::NoFixingOperator(flagged()))?;

    let lift = |c: &BitVector| {
        let mut v = BitVector::zeros(n);
        for i in c.support() {
            v.xor_assign(&basis[i]);
        }
        v
    };
    let particular = lift(&coeffs);
    let kernel: Vec<BitVector> = columns
        .transpose()
        .nullspace()
        .rows()
        .iter()
        .map(lift)
        .filter(|v| !v.is_zero())
        .collect();

    let mut best = particular.clone();
    if kernel.len() <= EXHAUSTIVE_KERNEL_DIM {
        let mut cur = particular;
        for step in 1u64..(1u64 << kernel.len()) {
            cur.xor_assign(&kernel[step.trailing_zeros() as usize]);
            if lighter(&cur, &best) {
                best = cur.clone();
            }
        }
    } else {
        let mut improved = true;
        while improved {
            improved = false;
            for k in &kernel {
                let cand = best.xor(k);
                if lighter(&cand, &best) {
                    best = cand;
                    improved = true;
                }
            }
        }
    }
    Ok(PauliOperator::from_row(&best, kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{h_tilde, rm_code};

    fn forward_setup() -> (Vec<PauliOperator>, Vec<PauliOperator>, SearchSpace) {
        let h = h_tilde(4).unwrap();
        let gauge: Vec<PauliOperator> = (0..3)
            .map(|i| PauliOperator::from_row(h.row(i), PauliKind::Z))
            .collect();
        let code = rm_code(4).unwrap();
        let others: Vec<PauliOperator> = code
            .stabilizer_ops()
            .into_iter()
            .filter(|s| !gauge.contains(s))
            .chain([code.logical_x.clone(), code.logical_z.clone()])
            .collect();
        let mask = BitVector::from_indices(15, 8..15);
        (gauge, others, SearchSpace::Qubits(mask))
    }

    #[test]
    fn forward_single_flag() {
        let (gauge, others, space) = forward_setup();
        let op = solve_fixing_operator(PauliKind::X, &gauge, &[false, false, true], &others, &space).unwrap();
        assert_eq!(op.to_string(), "X12 X13 X14 X15");
        let id = solve_fixing_operator(PauliKind::X, &gauge, &[false; 3], &others, &space).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn every_pattern_has_the_right_action() {
        let (gauge, others, space) = forward_setup();
        for pattern in 0u32..8 {
            let flags: Vec<bool> = (0..3).map(|i| pattern >> i & 1 == 1).collect();
            let op = solve_fixing_operator(PauliKind::X, &gauge, &flags, &others, &space).unwrap();
            for (g, f) in gauge.iter().zip(&flags) {
                assert_eq!(!g.commutes_with(&op), *f);
            }
            assert!(others.iter().all(|s| s.commutes_with(&op)));
        }
    }

    #[test]
    fn impossible_requests_are_reported() {
        let (gauge, others, _) = forward_setup();
        let empty = SearchSpace::Qubits(BitVector::zeros(15));
        assert!(matches!(
            solve_fixing_operator(PauliKind::X, &gauge, &[true, false, false], &others, &empty),
            Err(Error::NoFixingOperator(v)) if v == vec![1]
        ));
        // a Z operator commutes with every Z gauge row
        let all = SearchSpace::Qubits(BitVector::ones(15));
        assert!(solve_fixing_operator(PauliKind::Z, &gauge, &[true, false, false], &[], &all).is_err());
    }
}
