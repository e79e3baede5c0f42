//! Cross-checks of the symbolic engine against dense state vectors at `m = 3`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dense::{dense_encode, density_fidelity, purity, DenseState};
use crate::codes::{block_len, rm_code};
use crate::conversion::{single_qubit_errors, Converter, Direction, Mode};
use crate::engine::ForcedBranch;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Fidelity and purity tolerance.
pub const FIDELITY_TOL: f64 = 1e-9;

/// A measurement the engine called deterministic must have probability one.
const PROBABILITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct OracleTrial {
    pub direction: Direction,
    pub mode: Mode,
    pub error: PauliOperator,
    pub branch: String,
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub fidelity: f64,
    /// Purity of the kept block; 1 for forward trials.
    pub purity: f64,
    pub outcomes_agree: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub trials: usize,
    pub passed: usize,
    pub min_fidelity: f64,
    pub min_purity: f64,
    #[serde(skip)]
    pub records: Vec<OracleTrial>,
}

impl OracleSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// Random normalized amplitudes.
pub fn random_amplitudes(rng: &mut impl Rng) -> (Complex64, Complex64) {
    let mut v: [f64; 4] = [0.0; 4];
    loop {
        for x in &mut v {
            *x = rng.gen_range(-1.0..1.0);
        }
        let n: f64 = v.iter().map(|x| x * x).sum();
        if n > 1e-3 {
            let s = n.sqrt();
            return (Complex64::new(v[0] / s, v[1] / s), Complex64::new(v[2] / s, v[3] / s));
        }
    }
}

/// Runs one conversion in both simulators and compares the results.
pub fn check_trial(
    conv: &Converter,
    alpha: Complex64,
    beta: Complex64,
    error: &PauliOperator,
    branch: &[bool],
) -> Result<OracleTrial> {
    let out = conv.run(error, &mut ForcedBranch::new(branch.to_vec()))?;
    let report = &out.report;

    let mut state = dense_encode(alpha, beta, conv.source())?;
    state.apply_pauli(error)?;
    let mut outcomes_agree = true;
    let mut probe = conv.source_frame()?;
    probe.apply_pauli(error)?;
    for (x, (_, outcome)) in conv.plan().measurements().zip(&report.raw_syndromes.0) {
        let deterministic = probe.eigenvalue(&x.op)?.is_some();
        probe.measure_forced(&x.op, *outcome)?;
        let p = state.project(&x.op, *outcome)?;
        if deterministic && (p - 1.0).abs() > PROBABILITY_TOL {
            outcomes_agree = false;
        }
    }
    state.apply_pauli(&report.correction)?;

    let m = conv.m();
    let residual = report
        .residual_error
        .clone()
        .ok_or_else(|| Error::InconsistentFrame("conversion left no residual".into()))?;
    let mut expected = dense_encode(alpha, beta, conv.target())?;
    expected.apply_pauli(&residual)?;
    let (fidelity, purity_value) = match conv.direction() {
        Direction::Forward => (state.fidelity(&expected), 1.0),
        Direction::Backward => {
            let rho = state.reduced_density(block_len(m));
            (density_fidelity(&rho, &expected), purity(&rho))
        }
    };
    let passed = outcomes_agree
        && report.passed()
        && fidelity >= 1.0 - FIDELITY_TOL
        && purity_value >= 1.0 - FIDELITY_TOL;
    Ok(OracleTrial {
        direction: conv.direction(),
        mode: conv.plan().mode,
        error: error.clone(),
        branch: report.branch_outcomes.clone(),
        alpha: [alpha.re, alpha.im],
        beta: [beta.re, beta.im],
        fidelity,
        purity: purity_value,
        outcomes_agree,
        passed,
    })
}

/// Random trials over direction, mode, error, gauge branch and amplitudes
/// for the Steane to 15-qubit conversion pair.
pub fn cross_validate(trials: usize, seed: u64) -> Result<OracleSummary> {
    let m = 3;
    let converters: Vec<Converter> = [
        (Direction::Forward, Mode::Full),
        (Direction::Forward, Mode::Ft),
        (Direction::Backward, Mode::Full),
        (Direction::Backward, Mode::Ft),
    ]
    .into_iter()
    .map(|(d, mode)| Converter::new(d, m, mode))
    .collect::<Result<_>>()?;
    let errors = single_qubit_errors(block_len(m + 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(trials);
    for _ in 0..trials {
        let conv = converters.choose(&mut rng).expect("non-empty");
        let error = errors.choose(&mut rng).expect("non-empty");
        let branch: Vec<bool> = (0..m).map(|_| rng.gen()).collect();
        let (alpha, beta) = random_amplitudes(&mut rng);
        records.push(check_trial(conv, alpha, beta, error, &branch)?);
    }
    Ok(OracleSummary {
        trials,
        passed: records.iter().filter(|r| r.passed).count(),
        min_fidelity: records.iter().map(|r| r.fidelity).fold(1.0, f64::min),
        min_purity: records.iter().map(|r| r.purity).fold(1.0, f64::min),
        records,
    })
}

/// Which logical gate transversal `T` implements on the 15-qubit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LogicalT {
    T,
    TDagger,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalReport {
    /// `H^⊗7` on random Steane states against the encoded `H(α,β)`.
    pub hadamard_fidelity: f64,
    /// `T^⊗15` on the encoded `|0⟩`.
    pub t_zero_fidelity: f64,
    /// `T^⊗15` on the encoded `|+⟩` against the encoded `T|+⟩`.
    pub t_fidelity: f64,
    /// The same against the encoded `T†|+⟩`.
    pub t_dagger_fidelity: f64,
    pub logical_t: LogicalT,
}

impl TransversalReport {
    pub fn passed(&self) -> bool {
        self.hadamard_fidelity >= 1.0 - FIDELITY_TOL
            && self.t_zero_fidelity >= 1.0 - FIDELITY_TOL
            && self.logical_t != LogicalT::Neither
    }
}

fn gate_on_all(state: &mut DenseState, u: [[Complex64; 2]; 2]) {
    for q in 0..state.n() {
        state.apply_single(q, u);
    }
}

/// Transversal `H` on the Steane code and transversal `T` on the 15-qubit
/// code, checked on encoded states.
pub fn transversal_checks(seed: u64) -> Result<TransversalReport> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let h = [[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)], [c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)]];
    let t = [[c(1.0), c(0.0)], [c(0.0), Complex64::from_polar(1.0, FRAC_PI_4)]];

    let steane = rm_code(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hadamard_fidelity: f64 = 1.0;
    for k in 0..8 {
        let (a, b) = match k {
            0 => (c(1.0), c(0.0)),
            1 => (c(0.0), c(1.0)),
            _ => random_amplitudes(&mut rng),
        };
        let mut s = dense_encode(a, b, &steane)?;
        gate_on_all(&mut s, h);
        let target = dense_encode((a + b) * FRAC_1_SQRT_2, (a - b) * FRAC_1_SQRT_2, &steane)?;
        hadamard_fidelity = hadamard_fidelity.min(s.fidelity(&target));
    }

    let rm4 = rm_code(4)?;
    let mut zero = dense_encode(c(1.0), c(0.0), &rm4)?;
    let zero_ref = zero.clone();
    gate_on_all(&mut zero, t);
    let t_zero_fidelity = zero.fidelity(&zero_ref);

    let mut plus = dense_encode(c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), &rm4)?;
    gate_on_all(&mut plus, t);
    let phased = |angle: f64| {
        dense_encode(
            c(FRAC_1_SQRT_2),
            Complex64::from_polar(FRAC_1_SQRT_2, angle),
            &rm4,
        )
    };
    let t_fidelity = plus.fidelity(&phased(FRAC_PI_4)?);
    let t_dagger_fidelity = plus.fidelity(&phased(-FRAC_PI_4)?);
    let logical_t = if t_fidelity >= 1.0 - FIDELITY_TOL {
        LogicalT::T
    } else if t_dagger_fidelity >= 1.0 - FIDELITY_TOL {
        LogicalT::TDagger
    } else {
        LogicalT::Neither
    };
    Ok(TransversalReport {
        hadamard_fidelity,
        t_zero_fidelity,
        t_fidelity,
        t_dagger_fidelity,
        logical_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_forward_zero_state() {
        let conv = Converter::new(Direction::Forward, 3, Mode::Full).unwrap();
        let r = check_trial(
            &conv,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            &PauliOperator::identity(15),
            &[false; 3],
        )
        .unwrap();
        assert!(r.passed);
        assert!((r.fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn x5_any_branch() {
        let conv = Converter::new(Direction::Forward, 3, Mode::Full).unwrap();
        let err = PauliOperator::parse(15, "X5").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for b in 0..8 {
            let branch: Vec<bool> = (0..3).map(|i| b >> i & 1 == 1).collect();
            let (a, bt) = random_amplitudes(&mut rng);
            let r = check_trial(&conv, a, bt, &err, &branch).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn transversal_gates() {
        let r = transversal_checks(11).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.logical_t, LogicalT::TDagger);
    }
}
