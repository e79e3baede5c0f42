//! Code conversion between quantum Reed–Muller codes of adjacent order.
//!
//! The crate converts a logical qubit stored in `RM(1,m)` into `RM(1,m+1)` and
//! back by measuring gauge operators of a shared subsystem code, diagnosing a
//! single Pauli error from the combined syndromes and applying a correction
//! that also resets the random gauge outcomes.
//!
//! * [`gf2`]: packed bit vectors and matrices.
//! * [`pauli`]: Pauli operators with exact phase tracking.
//! * [`codes`]: generator matrices and the codes built from them.
//! * [`engine`]: a stabilizer-state simulator with one tracked logical qubit.
//! * [`conversion`]: measurement plans, fixing operators and the converter.
//! * [`harness`]: exhaustive sweeps and a dense state-vector cross-check.
//! * [`cost`]: time-cost accounting for the conversion primitives.

pub mod cli;
pub mod codes;
pub mod conversion;
pub mod cost;
pub mod engine;
pub mod error;
pub mod gf2;
pub mod harness;
pub mod pauli;

pub use error::{Error, Result};
