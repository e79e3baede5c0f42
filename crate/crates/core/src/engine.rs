//! Symbolic stabilizer-state simulation with one tracked logical qubit.
//!
//! A [`StabilizerFrame`] holds `n − 1` signed, independent, commuting
//! generators plus a signed logical pair. The encoded amplitudes `(α, β)` are
//! never represented: they stay attached to whatever operators the frame
//! currently tracks as logical X and Z. Measurements follow the usual
//! Gottesman–Knill update, and a logical operator that anticommutes with a
//! measured Pauli is multiplied by the generator that gets replaced.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{extended_code, CssCode};
use crate::error::{Error, Result};
use crate::pauli::{symplectic_matrix, PauliOperator};

/// Supplies outcomes for non-deterministic measurements.
pub trait BranchSource {
    /// `true` selects the −1 eigenspace. `None` means the source is exhausted.
    fn next_outcome(&mut self) -> Option<bool>;
}

/// Replays a fixed list of outcomes.
#[derive(Clone, Debug)]
pub struct ForcedBranch {
    bits: Vec<bool>,
    pos: usize,
}

impl ForcedBranch {
    pub fn new(bits: impl Into<Vec<bool>>) -> Self {
        Self {
            bits: bits.into(),
            pos: 0,
        }
    }

    /// Number of outcomes consumed so far.
    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl BranchSource for ForcedBranch {
    fn next_outcome(&mut self) -> Option<bool> {
        let bit = self.bits.get(self.pos).copied();
        self.pos += 1;
        bit
    }
}

/// Draws fair coin flips from a seeded ChaCha stream.
#[derive(Clone, Debug)]
pub struct SeededBranch(ChaCha8Rng);

impl SeededBranch {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl BranchSource for SeededBranch {
    fn next_outcome(&mut self) -> Option<bool> {
        Some(self.0.gen())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasurementResult {
    /// `true` for eigenvalue −1.
    pub outcome: bool,
    pub deterministic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerFrame {
    n: usize,
    gens: Vec<PauliOperator>,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
}

/// One leaf of [`branch_enumerate`].
#[derive(Clone, Debug)]
pub struct Branch {
    pub outcomes: Vec<bool>,
    pub frame: StabilizerFrame,
}

impl StabilizerFrame {
    pub fn new(
        gens: Vec<PauliOperator>,
        logical_x: PauliOperator,
        logical_z: PauliOperator,
    ) -> Result<Self> {
        let frame = Self {
            n: logical_x.n(),
            gens,
            logical_x,
            logical_z,
        };
        frame.check_invariants()?;
        Ok(frame)
    }

    /// The code space of `code` with every generator at +1.
    pub fn from_code(code: &CssCode) -> Result<Self> {
        Self::new(
            code.stabilizer_ops(),
            code.logical_x.clone(),
            code.logical_z.clone(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.gens
    }

    pub fn logical_x(&self) -> &PauliOperator {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliOperator {
        &self.logical_z
    }

    fn check_size(&self, op: &PauliOperator) -> Result<()> {
        if op.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: op.n(),
            });
        }
        Ok(())
    }

    /// Conjugates the state by `p`: every generator or logical that
    /// anticommutes with `p` changes sign.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        self.check_size(p)?;
        for g in self
            .gens
            .iter_mut()
            .chain([&mut self.logical_x, &mut self.logical_z])
        {
            if !g.commutes_with(p) {
                *g = g.negated();
            }
        }
        Ok(())
    }

    /// Product of generators equal to `op` up to sign, multiplied in
    /// ascending generator order. `None` when `op` is outside the group.
    fn decompose(&self, op: &PauliOperator) -> Option<PauliOperator> {
        let sel = symplectic_matrix(self.n, &self.gens).solve(&op.symplectic())?;
        let mut acc = PauliOperator::identity(self.n);
        for i in sel.support() {
            acc.mul_assign(&self.gens[i]);
        }
        Some(acc)
    }

    /// Eigenvalue of a Hermitian `op` on the current state: `Some(false)` for
    /// +1, `Some(true)` for −1 and `None` when the outcome would be random.
    pub fn eigenvalue(&self, op: &PauliOperator) -> Result<Option<bool>> {
        self.check_size(op)?;
        let sign = op
            .is_negative()
            .ok_or_else(|| Error::NonHermitian(op.to_string()))?;
        if self.gens.iter().any(|g| !g.commutes_with(op)) {
            return Ok(None);
        }
        let product = self
            .decompose(op)
            .ok_or_else(|| Error::LogicalDestroyingMeasurement(op.to_string()))?;
        let product_sign = product
            .is_negative()
            .expect("products of commuting Hermitian generators are Hermitian");
        Ok(Some(product_sign != sign))
    }

    /// Ideal projective measurement of a Hermitian Pauli.
    pub fn measure(
        &mut self,
        op: &PauliOperator,
        branch: &mut dyn BranchSource,
    ) -> Result<MeasurementResult> {
        self.check_size(op)?;
        if !op.is_hermitian() {
            return Err(Error::NonHermitian(op.to_string()));
        }
        let anti: Vec<usize> = (0..self.gens.len())
            .filter(|&i| !self.gens[i].commutes_with(op))
            .collect();
        let Some(&pivot) = anti.first() else {
            if !op.commutes_with(&self.logical_x) || !op.commutes_with(&self.logical_z) {
                return Err(Error::LogicalDestroyingMeasurement(op.to_string()));
            }
            let outcome = self
                .eigenvalue(op)?
                .expect("operator commutes with every generator");
            return Ok(MeasurementResult {
                outcome,
                deterministic: true,
            });
        };
        let outcome = branch
            .next_outcome()
            .ok_or_else(|| Error::Usage("branch outcomes exhausted".into()))?;
        let g = self.gens[pivot].clone();
        for &i in &anti[1..] {
            self.gens[i].mul_assign(&g);
        }
        for l in [&mut self.logical_x, &mut self.logical_z] {
            if !l.commutes_with(op) {
                l.mul_assign(&g);
            }
        }
        self.gens[pivot] = op.with_sign(outcome ^ op.is_negative().unwrap_or(false));
        Ok(MeasurementResult {
            outcome,
            deterministic: false,
        })
    }

    /// Measures with a forced outcome for the random case.
    pub fn measure_forced(&mut self, op: &PauliOperator, outcome: bool) -> Result<MeasurementResult> {
        self.measure(op, &mut ForcedBranch::new(vec![outcome]))
    }

    /// Verifies the frame invariants: `n − 1` independent commuting Hermitian
    /// generators, logicals commuting with all of them and anticommuting with
    /// each other. Independence also rules out `−I` in the signed group.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentFrame(msg));
        if self.gens.len() + 1 != self.n {
            return bad(format!("{} generators on {} qubits", self.gens.len(), self.n));
        }
        for l in [&self.logical_x, &self.logical_z] {
            self.check_size(l)?;
            if !l.is_hermitian() {
                return Err(Error::NonHermitian(l.to_string()));
            }
        }
        for (i, g) in self.gens.iter().enumerate() {
            self.check_size(g)?;
            if !g.is_hermitian() {
                return Err(Error::NonHermitian(g.to_string()));
            }
            for h in &self.gens[i + 1..] {
                if !g.commutes_with(h) {
                    return Err(Error::NonCommuting(g.to_string(), h.to_string()));
                }
            }
            for l in [&self.logical_x, &self.logical_z] {
                if !g.commutes_with(l) {
                    return Err(Error::NonCommuting(g.to_string(), l.to_string()));
                }
            }
        }
        if self.logical_x.commutes_with(&self.logical_z) {
            return bad("logical operators commute".into());
        }
        if symplectic_matrix(self.n, &self.gens).rank() != self.gens.len() {
            return bad("generators are dependent".into());
        }
        Ok(())
    }

    /// Splits off qubits `start..end` as a frame of their own.
    ///
    /// Fails unless the kept block carries the logical qubit and is in a
    /// product state with the discarded qubits.
    pub fn restrict(&self, start: usize, end: usize) -> Result<StabilizerFrame> {
        if start >= end || end > self.n {
            return Err(Error::Usage(format!("invalid block {start}..{end}")));
        }
        let outside: Vec<usize> = (0..self.n).filter(|q| *q < start || *q >= end).collect();
        let mut rows = self.gens.clone();
        let mut pivots: Vec<(usize, bool)> = Vec::new();
        let mut next = 0;
        for &q in &outside {
            for is_x in [true, false] {
                let bit = |p: &PauliOperator| if is_x { p.x().get(q) } else { p.z().get(q) };
                let Some(p) = (next..rows.len()).find(|&r| bit(&rows[r])) else {
                    continue;
                };
                rows.swap(next, p);
                let pivot_row = rows[next].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != next && bit(row) {
                        row.mul_assign(&pivot_row);
                    }
                }
                pivots.push((q, is_x));
                next += 1;
            }
        }
        let kept = end - start;
        if rows.len() - next != kept - 1 {
            return Err(Error::InconsistentFrame(format!(
                "block {}..{} is entangled with the rest of the register",
                start + 1,
                end
            )));
        }
        let mut logicals = [self.logical_x.clone(), self.logical_z.clone()];
        for l in logicals.iter_mut() {
            for (k, &(q, is_x)) in pivots.iter().enumerate() {
                let set = if is_x { l.x().get(q) } else { l.z().get(q) };
                if set {
                    l.mul_assign(&rows[k]);
                }
            }
            if outside.iter().any(|&q| l.x().get(q) || l.z().get(q)) {
                return Err(Error::InconsistentFrame(format!(
                    "logical operator cannot be confined to qubits {}..{}",
                    start + 1,
                    end
                )));
            }
        }
        let [lx, lz] = logicals;
        StabilizerFrame::new(
            rows[next..].iter().map(|g| g.restrict(start, end)).collect(),
            lx.restrict(start, end),
            lz.restrict(start, end),
        )
    }
}

/// Fresh extended code for conversion from `RM(1,m)`; all generators at +1.
pub fn prepare_extended(m: usize) -> Result<StabilizerFrame> {
    StabilizerFrame::from_code(&extended_code(m)?)
}

/// Measures `ops` in order and returns every branch of the random outcomes.
/// Deterministic measurements contribute their forced bit to each branch.
pub fn branch_enumerate(frame: &StabilizerFrame, ops: &[PauliOperator]) -> Result<Vec<Branch>> {
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::NonCommuting(a.to_string(), b.to_string()));
            }
        }
    }
    let mut branches = vec![Branch {
        outcomes: Vec::with_capacity(ops.len()),
        frame: frame.clone(),
    }];
    for op in ops {
        let mut next = Vec::with_capacity(branches.len() * 2);
        for b in branches {
            if let Some(outcome) = b.frame.eigenvalue(op)? {
                let mut b = b;
                b.outcomes.push(outcome);
                next.push(b);
                continue;
            }
            for outcome in [false, true] {
                let mut frame = b.frame.clone();
                frame.measure_forced(op, outcome)?;
                let mut outcomes = b.outcomes.clone();
                outcomes.push(outcome);
                next.push(Branch { outcomes, frame });
            }
        }
        branches = next;
    }
    Ok(branches)
}
