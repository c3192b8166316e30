//! Gate-level synthesis and exact simulation of staggered quantum walks.
//!
//! The crate lowers the evolution operators of staggered quantum walks on
//! cycles, tori and complete graphs to CNOT plus single-qubit rotations, and
//! checks every lowering against dense-matrix references built independently
//! of the circuits.
//!
//! Qubit ordering is fixed across the crate: a register `|q0 q1 ... q(n-1)>`
//! encodes a vertex label with `q0` as the most significant bit.
//!
//! ```
//! use sqwalk::synthesis::{increment_perm, lower, LoweringOptions};
//!
//! let perm = increment_perm(4).unwrap();
//! let lowered = lower(&perm, &LoweringOptions::default()).unwrap();
//! assert_eq!(lowered.cnot_count().unwrap(), 21);
//! ```

pub mod circuit;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod qasm;
pub mod sim;
pub mod synthesis;
pub mod walks;

#[cfg(test)]
mod testutil;

pub use circuit::{Circuit, Control, Gate, GateKind, Polarity};
pub use error::{Error, Result};
pub use sim::{DenseUnitary, Distribution, StateVector};

/// Largest register the crate will build.
pub const MAX_QUBITS: usize = 24;
