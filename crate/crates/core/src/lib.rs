//! Continuous-time quantum walks on graphs, their multi-qubit Hamiltonian
//! encodings, gate-level and pulse-level synthesis, and the dense oracles
//! used to check every mapping.
//!
//! Conventions used throughout the crate:
//!
//! * qubit 0 is the leftmost Kronecker factor (most significant bit of a
//!   basis index);
//! * spin up `↑` is bit value 1 and `Z|↑⟩ = +|↑⟩`, so in index order
//!   `Z = diag(-1, 1)` and `Y = [[0, i], [-i, 0]]`;
//! * evolution is `exp(-iHt)` with ħ = 1;
//! * walk Hamiltonians carry `-Δ_ij` off the diagonal and `ε_j` on it.

#![allow(clippy::needless_range_loop)]

mod bits;
pub mod circuit;
pub mod decode;
pub mod encode;
mod error;
pub mod gatelib;
pub mod par;
pub mod pauli;
pub mod sim;
pub mod spinchain;
pub mod synth;
pub mod walkgraph;

pub use bits::{qubits_for, BitString, Control};
pub use error::{Error, Result};
pub use par::Exec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::sync::OnceLock;

/// Dense complex matrix used by every oracle.
pub type CMatrix = DMatrix<Complex64>;
/// Dense real matrix (walk Hamiltonians).
pub type RMatrix = DMatrix<f64>;

/// Default cap on the dense register size.
pub const DEFAULT_MAX_QUBITS: usize = 14;

/// Dense qubit cap. `WALKFORGE_MAX_QUBITS` overrides the default.
pub fn max_qubits() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("WALKFORGE_MAX_QUBITS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_QUBITS)
    })
}

pub(crate) fn check_capacity(qubits: usize) -> Result<()> {
    let max = max_qubits();
    if qubits > max {
        return Err(Error::Capacity { qubits, max });
    }
    Ok(())
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
