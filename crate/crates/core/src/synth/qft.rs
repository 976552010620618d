//! Quantum Fourier transform circuits and the DFT reference.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::circuit::{Circuit, Gate};
use crate::gatelib::lower_to_fundamental;
use crate::{check_capacity, CMatrix, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QftLevel {
    /// `H`, controlled-`T_k` and `SWAP`.
    Named,
    /// `RX`, `RZ` and `XX` only.
    Fundamental,
}

/// Hadamard and controlled-`T_k` cascade on each qubit in turn, then the
/// `⌊n/2⌋` swaps that restore the bit order. Qubit 0 carries the most
/// significant bit.
pub fn build_qft_circuit(n: usize, level: QftLevel) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::InvalidArgument("QFT needs at least one qubit".into()));
    }
    let mut c = Circuit::new(n, 0);
    for j in 0..n {
        c.push(Gate::H { q: j })?;
        for k in 2..=(n - j) {
            c.push(Gate::Crk {
                control: j + k - 1,
                target: j,
                k: k as u32,
            })?;
        }
    }
    for j in 0..n / 2 {
        c.push(Gate::Swap { a: j, b: n - 1 - j })?;
    }
    match level {
        QftLevel::Named => Ok(c),
        QftLevel::Fundamental => lower_to_fundamental(&c),
    }
}

/// `F_jk = e^{i2πjk/2^n} / 2^{n/2}`.
pub fn qft_reference(n: usize) -> Result<CMatrix> {
    check_capacity(n)?;
    let dim = 1usize << n;
    let norm = 1.0 / (dim as f64).sqrt();
    Ok(CMatrix::from_fn(dim, dim, |j, k| {
        // reduce jk mod dim before scaling to keep the angle small
        let e = ((j * k) % dim) as f64 / dim as f64;
        Complex64::from_polar(norm, TAU * e)
    }))
}
