//! Order-one punctured Reed-Muller quantum codes and their relatives.
//!
//! `RM(1,m)` lives on `2^m − 1` qubits. Its X stabilizers come from the
//! generator matrix `Ḡ(1,m)` and its Z stabilizers from `Ḡ(1,m)` together with
//! the complementary rows `H̃(1,m)`. The extended code on `2^{m+1} − 1` qubits
//! couples an `RM(1,m)` block to a `2^m`-qubit cat-like block and shares a
//! subsystem code with `RM(1,m+1)`; gauge fixing moves between the two.
//!
//! Every generator remembers where it came from ([`Origin`]) so conversion
//! plans can refer to rows such as "the first m rows of H̃(1,m+1)".

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{symplectic_matrix, PauliKind, PauliOperator};

/// `Ḡ(1,3)`, the punctured first-order Reed-Muller generator on 7 bits.
const BASE_GENERATOR: [&str; 3] = ["1010101", "0110011", "0001111"];

fn check_order(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::OrderTooSmall { m, min });
    }
    Ok(())
}

/// Number of physical qubits of `RM(1,m)`.
pub fn block_len(m: usize) -> usize {
    (1usize << m) - 1
}

/// The `m × (2^m − 1)` generator matrix `Ḡ(1,m)`, built by the recursion
/// `Ḡ(1,m+1) = [Ḡ(1,m) 0 Ḡ(1,m); 0…0 1 1…1]`.
pub fn generator_matrix(m: usize) -> Result<BitMatrix> {
    check_order(m, 3)?;
    let mut g = BitMatrix::parse_rows(&BASE_GENERATOR)?;
    for k in 3..m {
        let n = block_len(k);
        let mut rows: Vec<BitVector> = g
            .rows()
            .iter()
            .map(|r| r.concat(&BitVector::zeros(1)).concat(r))
            .collect();
        rows.push(BitVector::zeros(n).concat(&BitVector::ones(n + 1)));
        g = BitMatrix::from_rows(2 * n + 1, rows)?;
    }
    Ok(g)
}

/// Row of `H̃(1,m)` with ones at 1-based positions `x, y, x + 2^{m−1}, y + 2^{m−1}`.
fn paired_row(m: usize, x: usize, y: usize) -> BitVector {
    let half = 1usize << (m - 1);
    BitVector::from_indices(block_len(m), [x - 1, y - 1, x - 1 + half, y - 1 + half])
}

/// The complementary parity rows `H̃(1,m)`, so that `[Ḡ(1,m); H̃(1,m)]`
/// generates the Z stabilizers of `RM(1,m)`.
///
/// `H̃(1,3)` is the empty `0 × 7` matrix. For `m ≥ 4` the matrix stacks
/// `m − 1` paired rows on top of `Ḡ(1,m−1)|0`, `H̃(1,m−1)|0` and `0|H̃(1,m−1)`,
/// giving `2^m − 2m − 2` rows.
pub fn h_tilde(m: usize) -> Result<BitMatrix> {
    check_order(m, 3)?;
    if m == 3 {
        return Ok(BitMatrix::empty(block_len(3)));
    }
    let lower = m - 1;
    let half = 1usize << lower;
    let n = block_len(m);
    let mut rows = vec![paired_row(m, 1, 3), paired_row(m, 2, 3)];
    for k in 3..=lower {
        rows.push(paired_row(m, 3, 3 + (1 << (k - 1))));
    }
    let g_lower = generator_matrix(lower)?;
    let h_lower = h_tilde(lower)?;
    rows.extend(g_lower.pad(0, half).into_rows());
    rows.extend(h_lower.pad(0, half).into_rows());
    rows.extend(h_lower.pad(half, 0).into_rows());
    BitMatrix::from_rows(n, rows)
}

/// Which matrix a generator row is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Ḡ(1,m)`.
    G(usize),
    /// `H̃(1,m)`.
    HTilde(usize),
}

/// Placement of a smaller matrix inside the extended register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    /// The matrix spans the whole register.
    Full,
    /// `M | 0`: the first block, padded on the right.
    First,
    /// `0 | M`: the last block, padded on the left.
    Last,
}

/// Provenance of a stabilizer or gauge generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Origin {
    pub family: Family,
    pub placement: Placement,
    /// 1-based row index within the family matrix.
    pub row: usize,
    pub kind: PauliKind,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::G(m) => format!("G(1,{m})"),
            Family::HTilde(m) => format!("H(1,{m})"),
        };
        let placed = match self.placement {
            Placement::Full => name,
            Placement::First => format!("({name}|0)"),
            Placement::Last => format!("(0|{name})"),
        };
        write!(f, "{placed}_{}^{}", self.row, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub origin: Origin,
    pub op: PauliOperator,
}

impl Generator {
    pub fn label(&self) -> String {
        self.origin.to_string()
    }
}

fn generators(
    matrix: &BitMatrix,
    family: Family,
    placement: Placement,
    kind: PauliKind,
    left: usize,
    right: usize,
) -> Vec<Generator> {
    matrix
        .pad(left, right)
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| Generator {
            origin: Origin {
                family,
                placement,
                row: i + 1,
                kind,
            },
            op: PauliOperator::from_row(row, kind),
        })
        .collect()
}

/// A CSS stabilizer code encoding one logical qubit.
#[derive(Clone, Debug)]
pub struct CssCode {
    pub label: String,
    pub m: usize,
    pub n: usize,
    pub x_stabs: Vec<Generator>,
    pub z_stabs: Vec<Generator>,
    pub logical_x: PauliOperator,
    pub logical_z: PauliOperator,
}

impl CssCode {
    /// X generators followed by Z generators.
    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.x_stabs.iter().chain(&self.z_stabs)
    }

    pub fn stabilizer_ops(&self) -> Vec<PauliOperator> {
        self.generators().map(|g| g.op.clone()).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.x_stabs.len() + self.z_stabs.len()
    }

    pub fn find(&self, origin: &Origin) -> Option<&Generator> {
        self.generators().find(|g| &g.origin == origin)
    }

    /// Whether `op` lies in the stabilizer group, ignoring its sign.
    pub fn stabilizes_up_to_sign(&self, op: &PauliOperator) -> bool {
        symplectic_matrix(self.n, &self.stabilizer_ops()).in_rowspace(&op.symplectic())
    }

    /// Checks commutation, independence and logical validity.
    pub fn check(&self) -> Result<()> {
        let ops = self.stabilizer_ops();
        if ops.len() != self.n - 1 {
            return Err(Error::InconsistentFrame(format!(
                "{}: {} generators for {} qubits",
                self.label,
                ops.len(),
                self.n
            )));
        }
        for (i, a) in ops.iter().enumerate() {
            if a.n() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: a.n(),
                });
            }
            for b in &ops[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(Error::NonCommuting(a.to_string(), b.to_string()));
                }
            }
            for l in [&self.logical_x, &self.logical_z] {
                if !a.commutes_with(l) {
                    return Err(Error::NonCommuting(a.to_string(), l.to_string()));
                }
            }
        }
        if self.logical_x.commutes_with(&self.logical_z) {
            return Err(Error::InconsistentFrame(format!(
                "{}: logical operators commute",
                self.label
            )));
        }
        let mat = symplectic_matrix(self.n, &ops);
        if mat.rank() != ops.len() {
            return Err(Error::InconsistentFrame(format!(
                "{}: generators are dependent",
                self.label
            )));
        }
        let xz = self.logical_x.mul(&self.logical_z);
        for l in [&self.logical_x, &self.logical_z, &xz] {
            if mat.in_rowspace(&l.symplectic()) {
                return Err(Error::InconsistentFrame(format!(
                    "{}: logical {l} lies in the stabilizer group",
                    self.label
                )));
            }
        }
        Ok(())
    }
}

/// `RM(1,m)` on `2^m − 1` qubits. `m = 3` is the Steane code and `m = 4` the
/// 15-qubit code.
pub fn rm_code(m: usize) -> Result<CssCode> {
    check_order(m, 3)?;
    let n = block_len(m);
    let g = generator_matrix(m)?;
    let h = h_tilde(m)?;
    let x_stabs = generators(&g, Family::G(m), Placement::Full, PauliKind::X, 0, 0);
    let mut z_stabs = generators(&g, Family::G(m), Placement::Full, PauliKind::Z, 0, 0);
    z_stabs.extend(generators(&h, Family::HTilde(m), Placement::Full, PauliKind::Z, 0, 0));
    Ok(CssCode {
        label: format!("RM(1,{m})"),
        m,
        n,
        x_stabs,
        z_stabs,
        logical_x: PauliOperator::of_kind(n, PauliKind::X, 0..n),
        logical_z: PauliOperator::of_kind(n, PauliKind::Z, 0..n),
    })
}

/// The extended code on `2^{m+1} − 1` qubits: an `RM(1,m)` block on the first
/// `2^m − 1` qubits and the state `(|0⟩|0̄⟩ + |1⟩|1̄⟩)/√2` on the remaining `2^m`.
pub fn extended_code(m: usize) -> Result<CssCode> {
    check_order(m, 3)?;
    let small = block_len(m);
    let half = small + 1;
    let n = block_len(m + 1);
    let g = generator_matrix(m)?;
    let g_up = generator_matrix(m + 1)?;
    let h = h_tilde(m)?;

    let mut x_stabs = generators(&g, Family::G(m), Placement::First, PauliKind::X, 0, half);
    x_stabs.extend(generators(&g_up, Family::G(m + 1), Placement::Full, PauliKind::X, 0, 0));

    let mut z_stabs = generators(&g, Family::G(m), Placement::First, PauliKind::Z, 0, half);
    z_stabs.extend(generators(&g_up, Family::G(m + 1), Placement::Full, PauliKind::Z, 0, 0));
    z_stabs.extend(generators(&h, Family::HTilde(m), Placement::First, PauliKind::Z, 0, half));
    z_stabs.extend(generators(&h, Family::HTilde(m), Placement::Last, PauliKind::Z, half, 0));

    Ok(CssCode {
        label: format!("ERM({m}~{})", m + 1),
        m,
        n,
        x_stabs,
        z_stabs,
        logical_x: PauliOperator::of_kind(n, PauliKind::X, 0..small),
        logical_z: PauliOperator::of_kind(n, PauliKind::Z, 0..small),
    })
}

/// Stabilizers and gauge generators of the subsystem code shared by the
/// extended code and `RM(1,m+1)`.
#[derive(Clone, Debug)]
pub struct SubsystemSpec {
    pub m: usize,
    pub n: usize,
    pub stabilizers: Vec<Generator>,
    /// `(Ḡ(1,m)|0)^X` rows followed by the first `m` rows of `H̃(1,m+1)^Z`.
    pub gauge_generators: Vec<Generator>,
}

impl SubsystemSpec {
    /// Gauge generators of one Pauli type.
    pub fn gauge_of_kind(&self, kind: PauliKind) -> Vec<&Generator> {
        self.gauge_generators
            .iter()
            .filter(|g| g.origin.kind == kind)
            .collect()
    }

    /// Whether `op` lies in the group generated by stabilizers and gauge
    /// generators, ignoring signs.
    pub fn gauge_group_contains(&self, op: &PauliOperator) -> bool {
        let ops: Vec<PauliOperator> = self
            .stabilizers
            .iter()
            .chain(&self.gauge_generators)
            .map(|g| g.op.clone())
            .collect();
        symplectic_matrix(self.n, &ops).in_rowspace(&op.symplectic())
    }
}

pub fn subsystem_spec(m: usize) -> Result<SubsystemSpec> {
    check_order(m, 3)?;
    let small = block_len(m);
    let half = small + 1;
    let n = block_len(m + 1);
    let g = generator_matrix(m)?;
    let g_up = generator_matrix(m + 1)?;
    let h = h_tilde(m)?;
    let h_up = h_tilde(m + 1)?;

    let mut stabilizers = generators(&g_up, Family::G(m + 1), Placement::Full, PauliKind::X, 0, 0);
    stabilizers.extend(generators(&g_up, Family::G(m + 1), Placement::Full, PauliKind::Z, 0, 0));
    stabilizers.extend(generators(&g, Family::G(m), Placement::First, PauliKind::Z, 0, half));
    stabilizers.extend(generators(&h, Family::HTilde(m), Placement::First, PauliKind::Z, 0, half));
    stabilizers.extend(generators(&h, Family::HTilde(m), Placement::Last, PauliKind::Z, half, 0));

    let mut gauge_generators = generators(&g, Family::G(m), Placement::First, PauliKind::X, 0, half);
    let first_rows = BitMatrix::from_rows(n, h_up.rows()[..m].to_vec())?;
    gauge_generators.extend(generators(
        &first_rows,
        Family::HTilde(m + 1),
        Placement::Full,
        PauliKind::Z,
        0,
        0,
    ));
    Ok(SubsystemSpec {
        m,
        n,
        stabilizers,
        gauge_generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support_1based(op: &PauliOperator) -> Vec<usize> {
        op.support().iter().map(|q| q + 1).collect()
    }

    #[test]
    fn steane_generator_matrix() {
        let g = generator_matrix(3).unwrap();
        assert_eq!(g.to_string(), "1010101\n0110011\n0001111");
        assert!(generator_matrix(2).is_err());
    }

    #[test]
    fn g14_last_row_and_rows() {
        let g = generator_matrix(4).unwrap();
        assert_eq!(g.row(3).to_string(), "000000011111111");
        let expected = [
            vec![1, 3, 5, 7, 9, 11, 13, 15],
            vec![2, 3, 6, 7, 10, 11, 14, 15],
            vec![4, 5, 6, 7, 12, 13, 14, 15],
            vec![8, 9, 10, 11, 12, 13, 14, 15],
        ];
        for (row, want) in g.rows().iter().zip(expected) {
            assert_eq!(row.support().map(|q| q + 1).collect::<Vec<_>>(), want);
        }
    }

    #[test]
    fn g15_rows_have_weight_16() {
        let g = generator_matrix(5).unwrap();
        assert_eq!((g.n_rows(), g.n_cols()), (5, 31));
        assert!(g.rows().iter().all(|r| r.weight() == 16));
    }

    #[test]
    fn h14_is_the_explicit_matrix() {
        let h = h_tilde(4).unwrap();
        let want = BitMatrix::parse_rows(&[
            "101000001010000",
            "011000000110000",
            "001000100010001",
            "101010100000000",
            "011001100000000",
            "000111100000000",
        ])
        .unwrap();
        assert_eq!(h, want);
        assert_eq!(h_tilde(5).unwrap().n_rows(), 20);
        assert!(h_tilde(3).unwrap().n_rows() == 0);
    }

    #[test]
    fn h_tilde_is_orthogonal_to_g() {
        for m in 3..=9 {
            let h = h_tilde(m).unwrap();
            let g = generator_matrix(m).unwrap();
            assert!(h.mat_mul_t(&g).unwrap().is_zero(), "m = {m}");
            assert_eq!(h.n_rows(), (1 << m) - 2 * m - 2);
        }
    }

    #[test]
    fn code_sizes() {
        let steane = rm_code(3).unwrap();
        assert_eq!((steane.x_stabs.len(), steane.z_stabs.len()), (3, 3));
        let rm15 = rm_code(4).unwrap();
        assert_eq!((rm15.x_stabs.len(), rm15.z_stabs.len()), (4, 10));
        assert_eq!(extended_code(3).unwrap().generator_count(), 14);
        let e4 = extended_code(4).unwrap();
        assert_eq!((e4.n, e4.generator_count()), (31, 30));
    }

    #[test]
    fn codes_satisfy_invariants() {
        for m in 3..=8 {
            rm_code(m).unwrap().check().unwrap();
            extended_code(m).unwrap().check().unwrap();
        }
    }

    #[test]
    fn steane_logicals_by_symplectic_products() {
        let c = rm_code(3).unwrap();
        assert!(!c.logical_x.commutes_with(&c.logical_z));
        for g in c.generators() {
            assert!(g.op.commutes_with(&c.logical_x));
            assert!(g.op.commutes_with(&c.logical_z));
        }
    }

    #[test]
    fn origin_labels() {
        let e = extended_code(3).unwrap();
        assert_eq!(e.x_stabs[0].label(), "(G(1,3)|0)_1^X");
        assert_eq!(e.x_stabs[3].label(), "G(1,4)_1^X");
        assert_eq!(support_1based(&e.x_stabs[0].op), vec![1, 3, 5, 7]);
    }

    #[test]
    fn subsystem_gauge_generators_m3() {
        let s = subsystem_spec(3).unwrap();
        let x: Vec<_> = s.gauge_of_kind(PauliKind::X);
        let z: Vec<_> = s.gauge_of_kind(PauliKind::Z);
        assert_eq!(x.len(), 3);
        assert_eq!(z.len(), 3);
        assert_eq!(support_1based(&z[0].op), vec![1, 3, 9, 11]);
        assert_eq!(support_1based(&z[1].op), vec![2, 3, 10, 11]);
        assert_eq!(support_1based(&z[2].op), vec![3, 7, 11, 15]);
        assert_eq!(support_1based(&x[2].op), vec![4, 5, 6, 7]);
    }

    #[test]
    fn subsystem_contains_both_codes() {
        for m in 3..=6 {
            let s = subsystem_spec(m).unwrap();
            for g in &s.gauge_generators {
                for st in &s.stabilizers {
                    assert!(g.op.commutes_with(&st.op));
                }
            }
            let target = rm_code(m + 1).unwrap();
            let ext = extended_code(m).unwrap();
            for g in target.generators().chain(ext.generators()) {
                assert!(s.gauge_group_contains(&g.op), "m = {m}: {}", g.label());
            }
            for z in s.gauge_of_kind(PauliKind::Z) {
                assert!(s
                    .gauge_of_kind(PauliKind::X)
                    .iter()
                    .any(|x| !x.op.commutes_with(&z.op)));
            }
        }
    }

    #[test]
    fn weight_census_m4() {
        let g = generator_matrix(4).unwrap();
        assert!(g.rows().iter().all(|r| r.weight() == 8));
        let h = h_tilde(4).unwrap();
        assert!(h.rows().iter().all(|r| r.weight() == 4));
    }
}
