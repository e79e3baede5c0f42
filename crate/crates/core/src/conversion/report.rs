use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::plan::{Direction, Mode};
use crate::pauli::PauliOperator;

/// Ordered `label → bit` map, serialized as a JSON object of 0/1 values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Syndromes(pub Vec<(String, bool)>);

impl Syndromes {
    pub fn get(&self, label: &str) -> Option<bool> {
        self.0.iter().find(|(l, _)| l == label).map(|(_, b)| *b)
    }

    pub fn bits(&self) -> Vec<bool> {
        self.0.iter().map(|(_, b)| *b).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for Syndromes {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (label, bit) in &self.0 {
            map.serialize_entry(label, &u8::from(*bit))?;
        }
        map.end()
    }
}

/// Renders bits as `"010"`.
pub fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

/// Single-qubit errors located from the combined syndromes, 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ErrorDiagnosis {
    pub x_error_qubit: Option<usize>,
    pub z_error_qubit: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConversionReport {
    pub direction: Direction,
    pub mode: Mode,
    pub m: usize,
    pub injected_error: Option<PauliOperator>,
    /// Outcomes of the random gauge rows, first row leftmost.
    pub branch_outcomes: String,
    pub raw_syndromes: Syndromes,
    pub combined_syndromes: Syndromes,
    pub fixed_syndromes: Syndromes,
    pub diagnosis: ErrorDiagnosis,
    pub fixing_operator: PauliOperator,
    pub correction: PauliOperator,
    /// Weight-≤1 error explaining the target-code syndrome, or the GF(2)
    /// representative when no such error exists.
    pub residual_error: Option<PauliOperator>,
    pub logical_preserved: bool,
    /// The output could not be matched to a single-qubit deviation from the
    /// target code.
    pub uncorrectable: bool,
    pub measurement_count: usize,
    pub total_weight: usize,
}

impl ConversionReport {
    /// Full mode must end exactly in the target code; ft mode may leave one
    /// single-qubit residual.
    pub fn passed(&self) -> bool {
        if self.uncorrectable || !self.logical_preserved {
            return false;
        }
        match (&self.residual_error, self.mode) {
            (Some(r), Mode::Full) => r.is_identity(),
            (Some(r), Mode::Ft) => r.weight() <= 1,
            (None, _) => false,
        }
    }
}

impl fmt::Display for ConversionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Syndromes| {
            s.0.iter()
                .map(|(l, b)| format!("{l}={}", u8::from(*b)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let qubit = |q: Option<usize>| q.map_or("-".to_string(), |q| q.to_string());
        writeln!(f, "{} conversion, m = {}, {} mode", self.direction, self.m, self.mode)?;
        if let Some(e) = &self.injected_error {
            writeln!(f, "injected error   {e}")?;
        }
        writeln!(f, "gauge branch     {}", self.branch_outcomes)?;
        writeln!(f, "raw syndromes    {}", show(&self.raw_syndromes))?;
        writeln!(f, "combined         {}", show(&self.combined_syndromes))?;
        writeln!(f, "fixed gauge      {}", show(&self.fixed_syndromes))?;
        writeln!(
            f,
            "diagnosis        X error on {}, Z error on {}",
            qubit(self.diagnosis.x_error_qubit),
            qubit(self.diagnosis.z_error_qubit)
        )?;
        writeln!(f, "fixing operator  {}", self.fixing_operator)?;
        writeln!(f, "correction       {}", self.correction)?;
        match &self.residual_error {
            Some(r) => writeln!(f, "residual         {r}")?,
            None => writeln!(f, "residual         unknown")?,
        }
        writeln!(f, "logical kept     {}", self.logical_preserved)?;
        write!(
            f,
            "measurements     {} (total weight {})",
            self.measurement_count, self.total_weight
        )
    }
}
