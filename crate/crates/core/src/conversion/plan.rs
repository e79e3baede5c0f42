//! Which operators to measure, in which order, and how their outcomes combine
//! into the syndromes of the larger code.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::{block_len, extended_code, generator_matrix, h_tilde, CssCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::pauli::{PauliKind, PauliOperator};

/// Remainders heavier than this are split in two when possible.
const SPLIT_THRESHOLD: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `RM(1,m)` to `RM(1,m+1)`.
    Forward,
    /// `RM(1,m+1)` to `RM(1,m)`.
    Backward,
}

impl Direction {
    /// Pauli type of the gauge operators measured in this direction.
    pub fn gauge_kind(self) -> PauliKind {
        match self {
            Direction::Forward => PauliKind::Z,
            Direction::Backward => PauliKind::X,
        }
    }

    pub fn label_prefix(self) -> &'static str {
        match self {
            Direction::Forward => "S",
            Direction::Backward => "S'",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Measures the opposite-type rows too and corrects both error types.
    Full,
    /// Measures only the gauge-type operators; errors of the other type pass
    /// through as a single-qubit residual.
    Ft,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Mode::Full => "full",
            Mode::Ft => "ft",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Random outcome; fixed afterwards.
    Gauge,
    /// A larger-code stabilizer reduced by already-measured operators.
    Remainder,
    /// One half of a split remainder.
    SplitHalf,
    /// Opposite-type larger-code stabilizer, measured only in full mode.
    Diagnostic,
}

#[derive(Clone, Debug, Serialize)]
pub struct Measurement {
    pub label: String,
    pub op: PauliOperator,
    pub role: Role,
}

/// `target = ⊕ members`, where the members index into
/// [`SyndromePlan::gauge_measurements`].
#[derive(Clone, Debug, Serialize)]
pub struct CombinationRule {
    pub target: String,
    pub stabilizer: PauliOperator,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyndromePlan {
    pub direction: Direction,
    pub mode: Mode,
    pub m: usize,
    pub n: usize,
    /// Gauge rows, then remainders (with split halves in place).
    pub gauge_measurements: Vec<Measurement>,
    pub diagnostic_measurements: Vec<Measurement>,
    /// One rule per row of `Ḡ(1,m+1)` of the gauge type.
    pub combination_rules: Vec<CombinationRule>,
}

impl SyndromePlan {
    /// All measurements in execution order.
    pub fn measurements(&self) -> impl Iterator<Item = &Measurement> {
        self.gauge_measurements
            .iter()
            .chain(&self.diagnostic_measurements)
    }

    /// The `m` gauge rows whose outcomes are random.
    pub fn gauge_rows(&self) -> &[Measurement] {
        &self.gauge_measurements[..self.m]
    }

    pub fn measurement_count(&self) -> usize {
        self.gauge_measurements.len() + self.diagnostic_measurements.len()
    }

    /// Number of measurements if no remainder had been split.
    pub fn unsplit_count(&self) -> usize {
        let halves = self
            .measurements()
            .filter(|x| x.role == Role::SplitHalf)
            .count();
        self.measurement_count() - halves / 2
    }

    pub fn total_weight(&self) -> usize {
        self.measurements().map(|x| x.op.weight()).sum()
    }

    pub fn max_weight(&self) -> usize {
        self.measurements().map(|x| x.op.weight()).max().unwrap_or(0)
    }

    pub fn find(&self, label: &str) -> Option<&Measurement> {
        self.measurements().find(|x| x.label == label)
    }

    /// Checks that every rule is a GF(2) identity and that all measured
    /// operators commute.
    pub fn check(&self) -> Result<()> {
        for rule in &self.combination_rules {
            let mut acc = BitVector::zeros(self.n);
            for &i in &rule.members {
                acc.xor_assign(&self.gauge_measurements[i].op.support_vector());
            }
            if acc != rule.stabilizer.support_vector() {
                return Err(Error::InconsistentFrame(format!(
                    "rule for {} does not reproduce its stabilizer",
                    rule.target
                )));
            }
        }
        let ops: Vec<&Measurement> = self.measurements().collect();
        for (i, a) in ops.iter().enumerate() {
            for b in &ops[i + 1..] {
                if !a.op.commutes_with(&b.op) {
                    return Err(Error::NonCommuting(a.label.clone(), b.label.clone()));
                }
            }
        }
        Ok(())
    }
}

/// Label of a combined syndrome, e.g. `S(1,4)_2^Z`.
pub fn combined_label(m: usize, row: usize, kind: PauliKind) -> String {
    format!("S(1,{})_{}^{kind}", m + 1, row + 1)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `false`. Returns whether the enumeration ran to completion.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return true;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lightest `target ⊕ (sum of a subset of pool)`, visiting subsets by
/// increasing size and stopping after `cap` candidates. Ties go to the smaller
/// subset, then to the lexicographically smaller support.
fn lightest_remainder(target: &BitVector, pool: &[BitVector], cap: usize) -> (Vec<usize>, BitVector) {
    let mut best = (Vec::new(), target.clone());
    let mut seen = 0usize;
    for size in 1..=pool.len() {
        let done = for_each_subset(pool.len(), size, |subset| {
            seen += 1;
            if seen > cap {
                return false;
            }
            let mut r = target.clone();
            for &i in subset {
                r.xor_assign(&pool[i]);
            }
            let better = r.weight() < best.1.weight()
                || (r.weight() == best.1.weight()
                    && subset.len() == best.0.len()
                    && r.cmp_support(&best.1).is_lt());
            if better {
                best = (subset.to_vec(), r);
            }
            true
        });
        if !done {
            break;
        }
    }
    best
}

/// Splits `support` at its median position if both halves commute with every
/// stabilizer and logical of `code`.
fn split(support: &BitVector, kind: PauliKind, code: &CssCode) -> Option<(BitVector, BitVector)> {
    let qubits: Vec<usize> = support.support().collect();
    let mid = qubits.len() / 2;
    let n = support.len();
    let lo = BitVector::from_indices(n, qubits[..mid].iter().copied());
    let hi = BitVector::from_indices(n, qubits[mid..].iter().copied());
    let compatible = |half: &BitVector| {
        let op = PauliOperator::from_row(half, kind);
        code.generators()
            .map(|g| &g.op)
            .chain([&code.logical_x, &code.logical_z])
            .all(|s| s.commutes_with(&op))
    };
    (compatible(&lo) && compatible(&hi)).then_some((lo, hi))
}

/// Builds the measurement schedule for one conversion.
pub fn build_plan(direction: Direction, m: usize, mode: Mode) -> Result<SyndromePlan> {
    if m < 3 {
        return Err(Error::OrderTooSmall { m, min: 3 });
    }
    let n = block_len(m + 1);
    let kind = direction.gauge_kind();
    let prefix = direction.label_prefix();
    let extended = extended_code(m)?;
    let big = generator_matrix(m + 1)?;
    let gauge_rows: Vec<BitVector> = match direction {
        Direction::Forward => h_tilde(m + 1)?.rows()[..m].to_vec(),
        Direction::Backward => generator_matrix(m)?.pad(0, block_len(m) + 1).into_rows(),
    };

    let mut measured: Vec<Measurement> = Vec::new();
    let push = |measured: &mut Vec<Measurement>, support: &BitVector, kind, role| {
        measured.push(Measurement {
            label: format!("{prefix}{}", measured.len() + 1),
            op: PauliOperator::from_row(support, kind),
            role,
        });
        measured.len() - 1
    };
    for row in &gauge_rows {
        push(&mut measured, row, kind, Role::Gauge);
    }

    let cap = 1usize << (2 * m);
    let mut rules = Vec::new();
    for (k, row) in big.rows().iter().enumerate() {
        let pool: Vec<BitVector> = measured.iter().map(|x| x.op.support_vector()).collect();
        let (mut members, remainder) = lightest_remainder(row, &pool, cap);
        let halves = (remainder.weight() > SPLIT_THRESHOLD)
            .then(|| split(&remainder, kind, &extended))
            .flatten();
        match halves {
            Some((lo, hi)) => {
                members.push(push(&mut measured, &lo, kind, Role::SplitHalf));
                members.push(push(&mut measured, &hi, kind, Role::SplitHalf));
            }
            None => members.push(push(&mut measured, &remainder, kind, Role::Remainder)),
        }
        members.sort_unstable();
        rules.push(CombinationRule {
            target: combined_label(m, k, kind),
            stabilizer: PauliOperator::from_row(row, kind),
            members,
        });
    }

    let mut diagnostics = Vec::new();
    if mode == Mode::Full {
        for row in big.rows() {
            let label = format!("{prefix}{}", measured.len() + diagnostics.len() + 1);
            diagnostics.push(Measurement {
                label,
                op: PauliOperator::from_row(row, kind.dual()),
                role: Role::Diagnostic,
            });
        }
    }

    let plan = SyndromePlan {
        direction,
        mode,
        m,
        n,
        gauge_measurements: measured,
        diagnostic_measurements: diagnostics,
        combination_rules: rules,
    };
    plan.check()?;
    Ok(plan)
}
