//! State-vector simulation for registers of at most 16 qubits.
//!
//! Basis index bit `q` holds qubit `q` (0-based), so qubit 1 in the printed
//! labels is the least significant bit.

use num_complex::Complex64;

use crate::codes::CssCode;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub const MAX_QUBITS: usize = 16;

/// Norm tolerance for states and amplitude pairs.
const NORM_TOL: f64 = 1e-10;

fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn mask(v: &crate::gf2::BitVector) -> usize {
    v.support().fold(0, |acc, q| acc | (1 << q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::OracleTooLarge { n, max: MAX_QUBITS });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn normalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        for a in &mut self.amps {
            *a /= norm;
        }
    }

    fn check(&self, op: &PauliOperator) -> Result<()> {
        if op.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: op.n(),
            });
        }
        Ok(())
    }

    /// `op · ψ` without modifying `self`.
    fn applied(&self, op: &PauliOperator) -> Vec<Complex64> {
        let x = mask(op.x());
        let z = mask(op.z());
        let phase = i_pow(op.phase());
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (z & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ x] = a * phase * sign;
        }
        out
    }

    pub fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        self.check(op)?;
        self.amps = self.applied(op);
        Ok(())
    }

    /// `⟨ψ|op|ψ⟩`.
    pub fn expectation(&self, op: &PauliOperator) -> Result<Complex64> {
        self.check(op)?;
        Ok(self
            .amps
            .iter()
            .zip(self.applied(op))
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Projects onto the `(−1)^outcome` eigenspace of a Hermitian `op` and
    /// renormalizes. Returns the probability of that outcome.
    pub fn project(&mut self, op: &PauliOperator, outcome: bool) -> Result<f64> {
        self.check(op)?;
        if !op.is_hermitian() {
            return Err(Error::NonHermitian(op.to_string()));
        }
        let sign = if outcome { -1.0 } else { 1.0 };
        let image = self.applied(op);
        for (a, b) in self.amps.iter_mut().zip(image) {
            *a = (*a + b * sign) * 0.5;
        }
        let prob = self.norm_sqr();
        if prob < NORM_TOL {
            return Err(Error::ImpossibleOutcome {
                op: op.to_string(),
                outcome: u8::from(outcome),
            });
        }
        self.normalize();
        Ok(prob)
    }

    /// Applies a single-qubit unitary `[[u00, u01], [u10, u11]]` to qubit `q`.
    pub fn apply_single(&mut self, q: usize, u: [[Complex64; 2]; 2]) {
        let bit = 1 << q;
        for b in 0..self.amps.len() {
            if b & bit == 0 {
                let a0 = self.amps[b];
                let a1 = self.amps[b | bit];
                self.amps[b] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[b | bit] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Reduced density matrix of qubits `0..k`, row-major `2^k × 2^k`.
    pub fn reduced_density(&self, k: usize) -> Vec<Complex64> {
        let dim = 1 << k;
        let rest = 1 << (self.n - k);
        let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..rest {
            let base = r << k;
            for i in 0..dim {
                let ai = self.amps[base | i];
                if ai.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..dim {
                    rho[i * dim + j] += ai * self.amps[base | j].conj();
                }
            }
        }
        rho
    }
}

/// `Tr ρ²` for a row-major Hermitian matrix.
pub fn purity(rho: &[Complex64]) -> f64 {
    rho.iter().map(|a| a.norm_sqr()).sum()
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn density_fidelity(rho: &[Complex64], psi: &DenseState) -> f64 {
    let dim = psi.amps.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..dim {
        for j in 0..dim {
            acc += psi.amps[i].conj() * rho[i * dim + j] * psi.amps[j];
        }
    }
    acc.re
}

/// `α|0̄⟩ + β|1̄⟩` for a CSS code whose generators all carry sign +1.
///
/// `|0̄⟩` is the uniform superposition over the span of the X generators'
/// supports and `|1̄⟩` its image under the logical X.
pub fn dense_encode(alpha: Complex64, beta: Complex64, code: &CssCode) -> Result<DenseState> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidAmplitude(format!("|α|² + |β|² = {norm}")));
    }
    let mut zero = DenseState::zero(code.n)?;
    let rows: Vec<usize> = code.x_stabs.iter().map(|g| mask(g.op.x())).collect();
    zero.amps[0] = Complex64::new(0.0, 0.0);
    for sel in 0u64..(1 << rows.len()) {
        let word = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| sel >> i & 1 == 1)
            .fold(0, |acc, (_, r)| acc ^ r);
        zero.amps[word] = Complex64::new(1.0, 0.0);
    }
    zero.normalize();
    let one = DenseState {
        n: code.n,
        amps: zero.applied(&code.logical_x.unsigned()),
    };
    Ok(DenseState {
        n: code.n,
        amps: zero
            .amps
            .iter()
            .zip(&one.amps)
            .map(|(a, b)| alpha * a + beta * b)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::rm_code;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn steane_encodings() {
        let code = rm_code(3).unwrap();
        let zero = dense_encode(c(1.0), c(0.0), &code).unwrap();
        let support: Vec<usize> = (0..128).filter(|&b| zero.amps[b].norm_sqr() > 0.0).collect();
        assert_eq!(support.len(), 8);
        assert!(support.iter().all(|b| b.count_ones() % 4 == 0));
        let one = dense_encode(c(0.0), c(1.0), &code).unwrap();
        for b in 0..128usize {
            assert_eq!(one.amps[b].norm_sqr() > 0.0, zero.amps[b ^ 0x7f].norm_sqr() > 0.0);
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = dense_encode(c(h), c(h), &code).unwrap();
        for g in code.generators() {
            assert!((plus.expectation(&g.op).unwrap().re - 1.0).abs() < 1e-12);
        }
        assert!(dense_encode(c(1.0), c(1.0), &code).is_err());
        assert!(matches!(
            DenseState::zero(17),
            Err(Error::OracleTooLarge { n: 17, .. })
        ));
    }

    #[test]
    fn projection_probabilities() {
        let code = rm_code(3).unwrap();
        let mut s = dense_encode(c(1.0), c(0.0), &code).unwrap();
        let z1 = PauliOperator::parse(7, "Z1").unwrap();
        let p = s.project(&z1, true).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!((s.expectation(&z1).unwrap().re + 1.0).abs() < 1e-12);
        assert!(s.project(&z1, false).is_err());
    }

    #[test]
    fn product_state_is_pure_on_its_block() {
        let mut s = DenseState::zero(3).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        s.apply_single(0, [[c(h), c(h)], [c(h), c(-h)]]);
        let rho = s.reduced_density(1);
        assert!((purity(&rho) - 1.0).abs() < 1e-12);
        let mut bell = DenseState::zero(2).unwrap();
        bell.amps = vec![c(h), c(0.0), c(0.0), c(h)];
        assert!((purity(&bell.reduced_density(1)) - 0.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn dense_pauli_matches_symbolic_product(a in 0u32..4096, b in 0u32..4096) {
            // P(Qψ) = (PQ)ψ on random 6-qubit Paulis
            let pick = |w: u32| {
                let x: Vec<bool> = (0..6).map(|i| w >> i & 1 == 1).collect();
                let z: Vec<bool> = (0..6).map(|i| w >> (i + 6) & 1 == 1).collect();
                PauliOperator::from_parts(
                    crate::gf2::BitVector::from_bools(&x),
                    crate::gf2::BitVector::from_bools(&z),
                    0,
                ).unwrap()
            };
            let (p, q) = (pick(a), pick(b));
            let mut s = DenseState::zero(6).unwrap();
            for k in 0..6 {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                s.apply_single(k, [[c(h), c(h)], [c(h), c(-h)]]);
                s.apply_single(k, [[c(1.0), c(0.0)], [c(0.0), Complex64::new(0.6, 0.8)]]);
            }
            let mut lhs = s.clone();
            lhs.apply_pauli(&q).unwrap();
            lhs.apply_pauli(&p).unwrap();
            let mut rhs = s.clone();
            rhs.apply_pauli(&p.mul(&q)).unwrap();
            for (x, y) in lhs.amps.iter().zip(&rhs.amps) {
                prop_assert!((x - y).norm() < 1e-12);
            }
        }
    }
}
