//! Exhaustive single-fault sweeps over every error and gauge branch.

use rayon::prelude::*;
use serde::Serialize;

use crate::conversion::{single_qubit_errors, ConversionReport, Converter, Direction, Mode};
use crate::engine::ForcedBranch;
use crate::error::Result;
use crate::pauli::PauliOperator;

#[derive(Clone, Debug, Serialize)]
pub struct SweepCase {
    pub error: PauliOperator,
    pub branch: String,
    pub passed: bool,
    pub report: ConversionReport,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepTotals {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Heaviest residual over passing cases.
    pub max_residual_weight: usize,
    /// Error-free branches whose fixing operator is the identity.
    pub clean_identity_fixes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub m: usize,
    pub direction: Direction,
    pub mode: Mode,
    pub errors: usize,
    pub branches: usize,
    pub totals: SweepTotals,
    #[serde(skip)]
    pub cases: Vec<SweepCase>,
}

impl SweepResult {
    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0 && self.totals.cases == self.errors * self.branches
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepCase> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Gauge outcomes for branch number `b`, first row as the most significant
/// bit so that branches come out in `"000", "001", …` order.
pub fn branch_bits(m: usize, b: usize) -> Vec<bool> {
    (0..m).map(|i| b >> (m - 1 - i) & 1 == 1).collect()
}

/// Runs every single-qubit error (and the error-free case) through every
/// gauge branch.
pub fn sweep(m: usize, direction: Direction, mode: Mode) -> Result<SweepResult> {
    let conv = Converter::new(direction, m, mode)?;
    sweep_with(&conv)
}

pub fn sweep_with(conv: &Converter) -> Result<SweepResult> {
    let plan = conv.plan();
    let m = plan.m;
    let errors = single_qubit_errors(plan.n);
    let branches = 1usize << m;
    let jobs: Vec<(usize, usize)> = (0..errors.len())
        .flat_map(|e| (0..branches).map(move |b| (e, b)))
        .collect();
    let cases = jobs
        .par_iter()
        .map(|&(e, b)| {
            let bits = branch_bits(m, b);
            let out = conv.run(&errors[e], &mut ForcedBranch::new(bits))?;
            Ok(SweepCase {
                error: errors[e].clone(),
                branch: out.report.branch_outcomes.clone(),
                passed: out.report.passed(),
                report: out.report,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut totals = SweepTotals {
        cases: cases.len(),
        ..SweepTotals::default()
    };
    for c in &cases {
        if c.passed {
            totals.passed += 1;
            let w = c.report.residual_error.as_ref().map_or(0, PauliOperator::weight);
            totals.max_residual_weight = totals.max_residual_weight.max(w);
        } else {
            totals.failed += 1;
        }
        if c.error.is_identity() && c.report.fixing_operator.is_identity() {
            totals.clean_identity_fixes += 1;
        }
    }
    Ok(SweepResult {
        m,
        direction: plan.direction,
        mode: plan.mode,
        errors: errors.len(),
        branches,
        totals,
        cases,
    })
}
