//! n-qubit Pauli operators in symplectic form.
//!
//! An operator is stored as `i^phase · X^x · Z^z`, where on every qubit the X
//! factor stands to the left of the Z factor. Under this convention a
//! single-qubit `Y` is `x = z = 1` with `phase = 1`, since `Y = iXZ`.
//!
//! Text rendering is 1-based and uses the subscript style common in the
//! stabilizer literature, e.g. `Z1 Z3 Z9 Z11` or `-X8 Y9`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Pure Pauli type of a CSS generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliKind {
    X,
    Z,
}

impl PauliKind {
    pub fn dual(self) -> Self {
        match self {
            PauliKind::X => PauliKind::Z,
            PauliKind::Z => PauliKind::X,
        }
    }
}

impl fmt::Display for PauliKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliKind::X => "X",
            PauliKind::Z => "Z",
        })
    }
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn parse(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    /// Builds `i^phase · X^x · Z^z`.
    pub fn from_parts(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self {
            x,
            z,
            phase: phase % 4,
        })
    }

    /// Replaces each 1 of a matrix row by the given Pauli and each 0 by I.
    pub fn from_row(row: &BitVector, kind: PauliKind) -> Self {
        let zero = BitVector::zeros(row.len());
        match kind {
            PauliKind::X => Self {
                x: row.clone(),
                z: zero,
                phase: 0,
            },
            PauliKind::Z => Self {
                x: zero,
                z: row.clone(),
                phase: 0,
            },
        }
    }

    /// Pure-type operator on the given 0-based qubits.
    pub fn of_kind(n: usize, kind: PauliKind, qubits: impl IntoIterator<Item = usize>) -> Self {
        Self::from_row(&BitVector::from_indices(n, qubits), kind)
    }

    /// Hermitian single-qubit operator on 0-based qubit `q`.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        match letter {
            Letter::I => {}
            Letter::X => p.x.set(q, true),
            Letter::Z => p.z.set(q, true),
            Letter::Y => {
                p.x.set(q, true);
                p.z.set(q, true);
                p.phase = 1;
            }
        }
        p
    }

    /// Builds the operator from its symplectic vector `x ‖ z` with the phase
    /// chosen so the result is Hermitian with sign +1.
    pub fn from_symplectic(v: &BitVector) -> Self {
        let n = v.len() / 2;
        let x = v.slice(0, n);
        let z = v.slice(n, 2 * n);
        let phase = (x.and_count(&z) % 4) as u8;
        Self { x, z, phase }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// Qubits acted on non-trivially.
    pub fn support_vector(&self) -> BitVector {
        self.x.or(&self.z)
    }

    pub fn support(&self) -> Vec<usize> {
        self.support_vector().support().collect()
    }

    pub fn weight(&self) -> usize {
        self.support_vector().weight()
    }

    /// True when the Pauli part is trivial, whatever the phase.
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    pub fn letter(&self, q: usize) -> Letter {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (false, true) => Letter::Z,
            (true, true) => Letter::Y,
        }
    }

    /// Exponent of `i` relative to the Hermitian canonical form in which every
    /// `Y` is written as `iXZ`.
    fn relative_phase(&self) -> u8 {
        let y_count = (self.x.and_count(&self.z) % 4) as u8;
        (self.phase + 4 - y_count) % 4
    }

    pub fn is_hermitian(&self) -> bool {
        self.relative_phase().is_multiple_of(2)
    }

    /// `Some(false)` for `+P`, `Some(true)` for `−P`, `None` when not Hermitian.
    pub fn is_negative(&self) -> Option<bool> {
        match self.relative_phase() {
            0 => Some(false),
            2 => Some(true),
            _ => None,
        }
    }

    /// The same Pauli with the phase reset to the +1 Hermitian form.
    pub fn unsigned(&self) -> Self {
        let mut p = self.clone();
        p.phase = (self.x.and_count(&self.z) % 4) as u8;
        p
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 2) % 4;
        p
    }

    /// Hermitian form with eigenvalue sign `(−1)^negative`.
    pub fn with_sign(&self, negative: bool) -> Self {
        let p = self.unsigned();
        if negative {
            p.negated()
        } else {
            p
        }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// Symplectic product test. Panics on size mismatch; see [`commutes`].
    pub fn commutes_with(&self, other: &Self) -> bool {
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)).is_multiple_of(2)
    }

    /// `self · other` with phase bookkeeping. Panics on size mismatch; see
    /// [`multiply`].
    pub fn mul(&self, other: &Self) -> Self {
        // Z^a X^b = (−1)^{a·b} X^b Z^a on each qubit.
        let swaps = self.z.and_count(&other.x);
        let phase = (self.phase as usize + other.phase as usize + 2 * swaps) % 4;
        Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: phase as u8,
        }
    }

    pub fn mul_assign(&mut self, other: &Self) {
        *self = self.mul(other);
    }

    /// Restricts to qubits `start..end`. The phase is kept as is.
    pub fn restrict(&self, start: usize, end: usize) -> Self {
        Self {
            x: self.x.slice(start, end),
            z: self.z.slice(start, end),
            phase: self.phase,
        }
    }

    /// Embeds into a larger register with `left` idle qubits before and
    /// `right` after.
    pub fn pad(&self, left: usize, right: usize) -> Self {
        let l = BitVector::zeros(left);
        let r = BitVector::zeros(right);
        Self {
            x: l.concat(&self.x).concat(&r),
            z: l.concat(&self.z).concat(&r),
            phase: self.phase,
        }
    }

    /// Parses `"X1 Z3 Y7"`, `"-Z2 Z3"` or `"I"` with 1-based qubit labels.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim_start()),
            None => (false, s.strip_prefix('+').unwrap_or(s).trim_start()),
        };
        let mut p = Self::identity(n);
        if body != "I" && !body.is_empty() {
            for token in body.split_whitespace() {
                let mut chars = token.chars();
                let letter = chars
                    .next()
                    .and_then(Letter::parse)
                    .ok_or_else(|| Error::Usage(format!("bad Pauli token {token:?}")))?;
                let q: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad qubit label in {token:?}")))?;
                if q == 0 || q > n {
                    return Err(Error::Usage(format!("qubit {q} outside 1..={n}")));
                }
                p = p.mul(&Self::single(n, q - 1, letter));
            }
        }
        Ok(p.with_sign(negative))
    }
}

/// Stacks the symplectic vectors `x ‖ z` of the operators as matrix rows.
pub fn symplectic_matrix(n: usize, ops: &[PauliOperator]) -> crate::gf2::BitMatrix {
    crate::gf2::BitMatrix::from_rows(2 * n, ops.iter().map(PauliOperator::symplectic).collect())
        .expect("operators must all act on n qubits")
}

/// Symplectic commutation test.
pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    p.check_size(q)?;
    Ok(p.commutes_with(q))
}

/// Pauli product `p · q`.
pub fn multiply(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    p.check_size(q)?;
    Ok(p.mul(q))
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.relative_phase() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        if self.is_identity() {
            return f.write_str("I");
        }
        let mut first = true;
        for q in self.support_vector().support() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let l = match self.letter(q) {
                Letter::X => 'X',
                Letter::Y => 'Y',
                Letter::Z => 'Z',
                Letter::I => unreachable!(),
            };
            write!(f, "{l}{}", q + 1)?;
        }
        Ok(())
    }
}

/// Serialized as the 1-based text form, e.g. `"-Z1 Z3"`.
impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli[{}]({self})", self.n())
    }
}
