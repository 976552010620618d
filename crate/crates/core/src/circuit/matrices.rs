//! Defining matrices of every gate, in basis-index order (`↓` = 0, `↑` = 1,
//! first listed qubit most significant).
//!
//! Rotations use `R_a(θ) = exp(−iθσ_a/2)` with the crate's Pauli matrices,
//! so `RZ(θ) = diag(e^{iθ/2}, e^{−iθ/2})` in index order.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::CMatrix;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[a, b, cc, d])
}

pub fn identity(qubits: usize) -> CMatrix {
    CMatrix::identity(1 << qubits, 1 << qubits)
}

pub fn x() -> CMatrix {
    m2(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0))
}

/// `Z = diag(−1, 1)` in index order (`Z|↑⟩ = |↑⟩`).
pub fn z() -> CMatrix {
    m2(c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
}

pub fn h() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    m2(c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0))
}

pub fn rx(theta: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    m2(c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0))
}

pub fn ry(theta: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    m2(c(co, 0.0), c(s, 0.0), c(-s, 0.0), c(co, 0.0))
}

pub fn rz(theta: f64) -> CMatrix {
    let z = c(0.0, 0.0);
    m2(Complex64::cis(theta / 2.0), z, z, Complex64::cis(-theta / 2.0))
}

/// `A_ε = diag(1, e^{−iε})`.
pub fn aphase(eps: f64) -> CMatrix {
    let z = c(0.0, 0.0);
    m2(c(1.0, 0.0), z, z, Complex64::cis(-eps))
}

/// `T_k = diag(1, e^{i2π/2^k})`.
pub fn tk(k: u32) -> CMatrix {
    aphase(-rk_angle(k))
}

/// Phase angle `2π/2^k` of `T_k`.
pub fn rk_angle(k: u32) -> f64 {
    2.0 * PI / 2f64.powi(k as i32)
}

/// `|↓⟩⟨↓| ⊗ I + |↑⟩⟨↑| ⊗ u` for a 2×2 `u`.
pub fn controlled(u: &CMatrix) -> CMatrix {
    let mut m = identity(2);
    m.view_mut((2, 2), (2, 2)).copy_from(u);
    m
}

pub fn cnot() -> CMatrix {
    controlled(&x())
}

/// `diag(1, 1, 1, e^{iφ})`.
pub fn cphase(phi: f64) -> CMatrix {
    controlled(&aphase(-phi))
}

pub fn crk(k: u32) -> CMatrix {
    controlled(&tk(k))
}

pub fn crx(theta: f64) -> CMatrix {
    controlled(&rx(theta))
}

pub fn swap() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for (r, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        m[(r, col)] = c(1.0, 0.0);
    }
    m
}

/// `V⊥(χ) = exp(iχ X⊗X) = cos χ · I + i sin χ · X⊗X`.
pub fn xx(chi: f64) -> CMatrix {
    let (s, co) = chi.sin_cos();
    let mut m = CMatrix::zeros(4, 4);
    for k in 0..4 {
        m[(k, k)] = c(co, 0.0);
        m[(k, 3 - k)] = c(0.0, s);
    }
    m
}

pub fn toffoli() -> CMatrix {
    let mut m = identity(3);
    m[(6, 6)] = c(0.0, 0.0);
    m[(7, 7)] = c(0.0, 0.0);
    m[(6, 7)] = c(1.0, 0.0);
    m[(7, 6)] = c(1.0, 0.0);
    m
}

/// Dense matrix of `u` on `target` conditioned on each control's polarity,
/// over the qubits ordered as `controls` followed by `target`.
pub fn multi_controlled(polarities: &[bool], u: &CMatrix) -> CMatrix {
    let k = polarities.len();
    let mut m = identity(k + 1);
    let fire = polarities.iter().fold(0usize, |acc, &p| (acc << 1) | p as usize);
    let base = fire << 1;
    m.view_mut((base, base), (2, 2)).copy_from(u);
    m
}
