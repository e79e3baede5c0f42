//! Verification tools: exhaustive sweeps, a dense state-vector oracle and
//! transversal-gate checks.

pub mod dense;
pub mod oracle;
pub mod sweep;

pub use dense::{dense_encode, DenseState};
pub use oracle::{cross_validate, transversal_checks, LogicalT, OracleSummary, TransversalReport};
pub use sweep::{sweep, sweep_with, SweepCase, SweepResult, SweepTotals};
