//! Gauge-fixing conversion between `RM(1,m)` and `RM(1,m+1)`.
//!
//! A conversion measures the plan's operators on a stabilizer frame, combines
//! the outcomes into syndromes of the larger code, locates at most one error
//! of each type, resets the random gauge outcomes with a precomputed fixing
//! operator and applies everything as one composite correction.

mod fixing;
mod plan;
mod report;

use std::collections::HashMap;

pub use fixing::{solve_fixing_operator, SearchSpace};
pub use plan::{build_plan, combined_label, CombinationRule, Direction, Measurement, Mode, Role, SyndromePlan};
pub use report::{bit_string, ConversionReport, ErrorDiagnosis, Syndromes};

use crate::codes::{block_len, extended_code, h_tilde, rm_code, CssCode};
use crate::engine::{BranchSource, StabilizerFrame};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{Letter, PauliKind, PauliOperator};

/// Qubit (1-based) whose binary expansion matches the syndrome bits, first
/// bit least significant. `None` for the all-zero syndrome.
pub fn diagnose(bits: &[bool]) -> Option<usize> {
    let j = bits
        .iter()
        .enumerate()
        .fold(0usize, |acc, (i, b)| acc | (usize::from(*b) << i));
    (j != 0).then_some(j)
}

/// Removes the diagnosed error's contribution from the raw gauge outcomes:
/// a row's bit flips when the error qubit lies in its support.
pub fn fix_syndromes(raw: &[bool], diagnosed: Option<usize>, gauge_rows: &[PauliOperator]) -> Vec<bool> {
    raw.iter()
        .zip(gauge_rows)
        .map(|(bit, row)| match diagnosed {
            Some(j) => bit ^ row.support_vector().get(j - 1),
            None => *bit,
        })
        .collect()
}

/// Index into a fixing table: bit `i` is gauge row `i`.
pub fn pattern_index(flags: &[bool]) -> usize {
    flags
        .iter()
        .enumerate()
        .fold(0, |acc, (i, b)| acc | (usize::from(*b) << i))
}

fn single(n: usize, qubit: Option<usize>, kind: PauliKind) -> PauliOperator {
    match qubit {
        Some(j) => PauliOperator::of_kind(n, kind, [j - 1]),
        None => PauliOperator::identity(n),
    }
}

fn syndrome_of(err: &PauliOperator, stabilizers: &[PauliOperator]) -> BitVector {
    BitVector::from_bools(&stabilizers.iter().map(|s| !s.commutes_with(err)).collect::<Vec<_>>())
}

/// Every single-qubit Pauli on `n` qubits plus the identity, in the order
/// `I, X1, Y1, Z1, X2, …`.
pub fn single_qubit_errors(n: usize) -> Vec<PauliOperator> {
    let mut out = vec![PauliOperator::identity(n)];
    for q in 0..n {
        for letter in [Letter::X, Letter::Y, Letter::Z] {
            out.push(PauliOperator::single(n, q, letter));
        }
    }
    out
}

/// Lookup decoder for errors of weight at most one.
#[derive(Clone, Debug)]
struct Decoder {
    stabilizers: Vec<PauliOperator>,
    table: HashMap<BitVector, PauliOperator>,
}

impl Decoder {
    fn new(code: &CssCode) -> Self {
        let stabilizers = code.stabilizer_ops();
        let mut table = HashMap::new();
        for e in single_qubit_errors(code.n) {
            table.entry(syndrome_of(&e, &stabilizers)).or_insert(e);
        }
        Self { stabilizers, table }
    }

    /// Some Pauli with the given syndrome, from a linear solve.
    fn representative(&self, syndrome: &BitVector) -> Option<PauliOperator> {
        let n = self.stabilizers[0].n();
        // a row z‖x per stabilizer; x‖z · (z‖x) is the symplectic product
        let rows: Vec<BitVector> = self.stabilizers.iter().map(|s| s.z().concat(s.x())).collect();
        let m = BitMatrix::from_rows(2 * n, rows).ok()?.transpose();
        let v = m.solve(syndrome)?;
        Some(PauliOperator::from_symplectic(&v))
    }
}

/// Outcome of one conversion: the report and the final frame.
#[derive(Clone, Debug)]
pub struct Conversion {
    pub report: ConversionReport,
    pub frame: StabilizerFrame,
}

/// A conversion set up for one direction, order and mode, with its plan and
/// all `2^m` fixing operators precomputed.
#[derive(Clone, Debug)]
pub struct Converter {
    plan: SyndromePlan,
    source: CssCode,
    target: CssCode,
    fixing: Vec<PauliOperator>,
    decoder: Decoder,
}

impl Converter {
    pub fn new(direction: Direction, m: usize, mode: Mode) -> Result<Self> {
        let plan = build_plan(direction, m, mode)?;
        let n = plan.n;
        let (source, target, search_code, kind, space) = match direction {
            Direction::Forward => {
                let target = rm_code(m + 1)?;
                let last_block = BitVector::from_indices(n, block_len(m) + 1..n);
                (extended_code(m)?, target.clone(), target, PauliKind::X, SearchSpace::Qubits(last_block))
            }
            Direction::Backward => {
                let extended = extended_code(m)?;
                let partners = h_tilde(m + 1)?.rows()[..m].to_vec();
                (rm_code(m + 1)?, rm_code(m)?, extended, PauliKind::Z, SearchSpace::Span(partners))
            }
        };
        let gauge: Vec<PauliOperator> = plan.gauge_rows().iter().map(|x| x.op.clone()).collect();
        let commute_with: Vec<PauliOperator> = search_code
            .stabilizer_ops()
            .into_iter()
            .filter(|s| !gauge.iter().any(|g| g.symplectic() == s.symplectic()))
            .chain([search_code.logical_x.clone(), search_code.logical_z.clone()])
            .collect();
        let fixing = (0..1usize << m)
            .map(|p| {
                let flags: Vec<bool> = (0..m).map(|i| p >> i & 1 == 1).collect();
                solve_fixing_operator(kind, &gauge, &flags, &commute_with, &space)
            })
            .collect::<Result<Vec<_>>>()?;
        let decoder = Decoder::new(&target);
        Ok(Self {
            plan,
            source,
            target,
            fixing,
            decoder,
        })
    }

    pub fn plan(&self) -> &SyndromePlan {
        &self.plan
    }

    pub fn direction(&self) -> Direction {
        self.plan.direction
    }

    pub fn m(&self) -> usize {
        self.plan.m
    }

    /// The code the conversion starts from.
    pub fn source(&self) -> &CssCode {
        &self.source
    }

    /// The code the conversion ends in.
    pub fn target(&self) -> &CssCode {
        &self.target
    }

    /// Fixing operators indexed by [`pattern_index`].
    pub fn fixing_table(&self) -> &[PauliOperator] {
        &self.fixing
    }

    pub fn fixing_operator(&self, flags: &[bool]) -> &PauliOperator {
        &self.fixing[pattern_index(flags)]
    }

    /// A clean source-code frame with every generator at +1.
    pub fn source_frame(&self) -> Result<StabilizerFrame> {
        StabilizerFrame::from_code(&self.source)
    }

    /// Injects `error` into a clean source frame and converts it.
    pub fn run(&self, error: &PauliOperator, branch: &mut dyn BranchSource) -> Result<Conversion> {
        let mut frame = self.source_frame()?;
        frame.apply_pauli(error)?;
        self.convert(frame, Some(error), branch)
    }

    /// Converts `frame`, which must hold the source code up to one error.
    /// `injected` is only recorded in the report.
    pub fn convert(
        &self,
        mut frame: StabilizerFrame,
        injected: Option<&PauliOperator>,
        branch: &mut dyn BranchSource,
    ) -> Result<Conversion> {
        let plan = &self.plan;
        if frame.n() != plan.n {
            return Err(Error::DimensionMismatch {
                expected: plan.n,
                found: frame.n(),
            });
        }
        let m = plan.m;
        let mut outcomes = Vec::with_capacity(plan.measurement_count());
        for x in plan.measurements() {
            outcomes.push(frame.measure(&x.op, branch)?.outcome);
        }
        let raw = Syndromes(plan.measurements().map(|x| x.label.clone()).zip(outcomes.iter().copied()).collect());

        let combined_bits: Vec<bool> = plan
            .combination_rules
            .iter()
            .map(|r| r.members.iter().fold(false, |acc, &i| acc ^ outcomes[i]))
            .collect();
        let combined = Syndromes(
            plan.combination_rules
                .iter()
                .map(|r| r.target.clone())
                .zip(combined_bits.iter().copied())
                .collect(),
        );

        let gauge_kind = plan.direction.gauge_kind();
        let seen = diagnose(&combined_bits);
        let other = diagnose(&outcomes[plan.gauge_measurements.len()..]);
        let diagnosis = match gauge_kind {
            PauliKind::Z => ErrorDiagnosis {
                x_error_qubit: seen,
                z_error_qubit: other,
            },
            PauliKind::X => ErrorDiagnosis {
                x_error_qubit: other,
                z_error_qubit: seen,
            },
        };

        let gauge_ops: Vec<PauliOperator> = plan.gauge_rows().iter().map(|x| x.op.clone()).collect();
        let fixed_bits = fix_syndromes(&outcomes[..m], seen, &gauge_ops);
        let fixed = Syndromes(
            plan.gauge_rows()
                .iter()
                .map(|x| x.label.clone())
                .zip(fixed_bits.iter().copied())
                .collect(),
        );
        let fixing = self.fixing_operator(&fixed_bits).clone();
        let correction = fixing
            .mul(&single(plan.n, seen, gauge_kind.dual()))
            .mul(&single(plan.n, other, gauge_kind))
            .unsigned();
        frame.apply_pauli(&correction)?;

        let mut report = ConversionReport {
            direction: plan.direction,
            mode: plan.mode,
            m,
            injected_error: injected.cloned(),
            branch_outcomes: bit_string(&outcomes[..m]),
            raw_syndromes: raw,
            combined_syndromes: combined,
            fixed_syndromes: fixed,
            diagnosis,
            fixing_operator: fixing,
            correction,
            residual_error: None,
            logical_preserved: false,
            uncorrectable: true,
            measurement_count: plan.measurement_count(),
            total_weight: plan.total_weight(),
        };

        if plan.direction == Direction::Backward {
            match frame.restrict(0, block_len(m)) {
                Ok(kept) => frame = kept,
                Err(_) => return Ok(Conversion { report, frame }),
            }
        }
        self.verify(&frame, &mut report);
        Ok(Conversion { report, frame })
    }

    /// Reads the target-code syndrome from `frame`, explains it by the
    /// lightest residual error and checks that the logical operators carry
    /// over with the signs that residual implies.
    fn verify(&self, frame: &StabilizerFrame, report: &mut ConversionReport) {
        let mut syndrome = Vec::with_capacity(self.decoder.stabilizers.len());
        for s in &self.decoder.stabilizers {
            match frame.eigenvalue(s) {
                Ok(Some(bit)) => syndrome.push(bit),
                _ => return,
            }
        }
        let syndrome = BitVector::from_bools(&syndrome);
        let (residual, uncorrectable) = match self.decoder.table.get(&syndrome) {
            Some(r) => (Some(r.clone()), false),
            None => (self.decoder.representative(&syndrome), true),
        };
        let Some(residual) = residual else {
            return;
        };
        let flipped = |tracked: &PauliOperator, reference: &PauliOperator| {
            frame.eigenvalue(&tracked.mul(reference)).ok().flatten()
        };
        let t = &self.target;
        let x_flip = flipped(frame.logical_x(), &t.logical_x);
        let z_flip = flipped(frame.logical_z(), &t.logical_z);
        report.logical_preserved = x_flip == Some(!residual.commutes_with(&t.logical_x))
            && z_flip == Some(!residual.commutes_with(&t.logical_z));
        report.residual_error = Some(residual);
        report.uncorrectable = uncorrectable;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ForcedBranch;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn diagnose_examples() {
        assert_eq!(diagnose(&[true, false, true, false]), Some(5));
        assert_eq!(diagnose(&[true; 4]), Some(15));
        assert_eq!(diagnose(&[false; 4]), None);
    }

    #[test]
    fn fix_rule_examples() {
        let plan = build_plan(Direction::Forward, 3, Mode::Ft).unwrap();
        let ops: Vec<PauliOperator> = plan.gauge_rows().iter().map(|x| x.op.clone()).collect();
        assert_eq!(fix_syndromes(&bits("010"), Some(3), &ops), bits("101"));
        assert_eq!(fix_syndromes(&bits("010"), None, &ops), bits("010"));
        let plan = build_plan(Direction::Backward, 3, Mode::Ft).unwrap();
        let ops: Vec<PauliOperator> = plan.gauge_rows().iter().map(|x| x.op.clone()).collect();
        assert_eq!(fix_syndromes(&bits("000"), Some(7), &ops), bits("111"));
    }

    #[test]
    fn forward_clean_runs() {
        let conv = Converter::new(Direction::Forward, 3, Mode::Full).unwrap();
        let id = PauliOperator::identity(15);
        let out = conv.run(&id, &mut ForcedBranch::new(bits("001"))).unwrap();
        assert_eq!(out.report.correction.to_string(), "X12 X13 X14 X15");
        assert!(out.report.passed());
        let out = conv.run(&id, &mut ForcedBranch::new(bits("000"))).unwrap();
        assert!(out.report.correction.is_identity());
        for s in conv.target().generators() {
            assert_eq!(out.frame.eigenvalue(&s.op).unwrap(), Some(false));
        }
    }

    #[test]
    fn backward_z5_full() {
        let conv = Converter::new(Direction::Backward, 3, Mode::Full).unwrap();
        let err = PauliOperator::parse(15, "Z5").unwrap();
        for p in 0..8 {
            let branch: Vec<bool> = (0..3).map(|i| p >> i & 1 == 1).collect();
            let out = conv.run(&err, &mut ForcedBranch::new(branch)).unwrap();
            let r = &out.report;
            assert_eq!(r.diagnosis.z_error_qubit, Some(5));
            assert_eq!(r.combined_syndromes.bits(), bits("1010"));
            assert!(r.correction.z().get(4) != r.fixing_operator.z().get(4));
            assert!(r.passed(), "{r}");
            assert_eq!(out.frame.n(), 7);
        }
    }

    #[test]
    fn ft_leaves_single_residual() {
        let conv = Converter::new(Direction::Forward, 3, Mode::Ft).unwrap();
        let err = PauliOperator::parse(15, "Y6").unwrap();
        let out = conv.run(&err, &mut ForcedBranch::new(bits("110"))).unwrap();
        assert_eq!(out.report.diagnosis.x_error_qubit, Some(6));
        assert_eq!(out.report.residual_error.as_ref().unwrap().to_string(), "Z6");
        assert!(out.report.passed());
    }

    #[test]
    fn two_faults_are_flagged() {
        let conv = Converter::new(Direction::Forward, 3, Mode::Full).unwrap();
        let err = PauliOperator::parse(15, "X1 X2").unwrap();
        let out = conv.run(&err, &mut ForcedBranch::new(bits("000"))).unwrap();
        assert!(!out.report.passed());
    }
}
