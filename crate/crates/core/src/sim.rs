//! Dense state vectors, walk evolution and comparison metrics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::par::{self, Exec};
use crate::synth::EigenPropagator;
use crate::walkgraph::WalkGraph;
use crate::{CMatrix, Error, Result};

/// Tolerance on `‖ψ‖₂ − 1` when a state is constructed.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Unit-norm state from raw amplitudes.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidArgument("state vector is empty".into()));
        }
        let n = norm(&amps);
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!("state norm is {n}, expected 1")));
        }
        Ok(StateVector { amps })
    }

    /// Rescales to unit norm.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amps);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidArgument("cannot normalise a zero state".into()));
        }
        Ok(StateVector {
            amps: amps.into_iter().map(|a| a / n).collect(),
        })
    }

    pub(crate) fn from_amplitudes_unchecked(amps: Vec<Complex64>) -> Self {
        StateVector { amps }
    }

    /// `|k⟩` in a `dim`-dimensional space.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `U ψ` for a dense matrix.
    pub fn transform(&self, u: &CMatrix) -> Result<StateVector> {
        if u.ncols() != self.dim() || u.nrows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ncols(),
            });
        }
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        Ok(StateVector {
            amps: (u * v).iter().copied().collect(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        Ok(serde_json::to_string(&pairs)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(text)?;
        Self::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
        StateVector::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect()).map_err(serde::de::Error::custom)
    }
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `exp(−iHt)ψ₀` for the walk Hamiltonian of `g`.
pub fn evolve_walk(g: &WalkGraph, psi0: &StateVector, t: f64) -> Result<StateVector> {
    if psi0.dim() != g.n_nodes() {
        return Err(Error::DimensionMismatch {
            expected: g.n_nodes(),
            found: psi0.dim(),
        });
    }
    let p = EigenPropagator::from_real(&g.walk_matrix())?;
    p.evolve(psi0, t)
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

/// `‖U†U − I‖_max`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.ncols();
    let g = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for c in 0..n {
        for r in 0..n {
            let want = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((g[(r, c)] - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

/// `max |u_ij − e^{iφ} v_ij|` for one phase `φ`.
pub fn phased_max_diff(u: &CMatrix, v: &CMatrix, phi: f64, exec: Exec) -> f64 {
    let ph = Complex64::cis(phi);
    let us = u.as_slice();
    let vs = v.as_slice();
    par::max_range(exec.for_len(us.len(), 1 << 14), us.len(), |k| {
        (us[k] - ph * vs[k]).norm()
    })
}

/// `min_φ ‖u − e^{iφ}v‖_max` for unitaries of equal size.
pub fn unitary_distance(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    for m in [u, v] {
        let d = unitarity_defect(m);
        if d > 1e-9 {
            return Err(Error::NotUnitary(d));
        }
    }
    Ok(phase_aligned_distance(u, v, Exec::default())?.0)
}

/// Minimum over a global phase of the max-abs entry difference, and the
/// minimizing phase. Inputs need not be square or unitary.
pub fn phase_aligned_distance(u: &CMatrix, v: &CMatrix, exec: Exec) -> Result<(f64, f64)> {
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows() * u.ncols(),
            found: v.nrows() * v.ncols(),
        });
    }
    let f = |phi: f64| phased_max_diff(u, v, phi, exec);
    let mut cands = Vec::new();
    let overlap: Complex64 = v.iter().zip(u.iter()).map(|(a, b)| a.conj() * b).sum();
    if overlap.norm() > 0.0 {
        cands.push(overlap.arg());
    }
    if let Some((k, _)) = v.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())) {
        if v[k].norm() > 0.0 && u[k].norm() > 0.0 {
            cands.push((u[k] / v[k]).arg());
        }
    }
    if u.nrows() * u.ncols() <= 1 << 16 || cands.is_empty() {
        cands.extend((0..64).map(|k| std::f64::consts::TAU * k as f64 / 64.0));
    }
    let mut best = (f64::INFINITY, 0.0);
    for &c in &cands {
        let d = f(c);
        if d < best.0 {
            best = (d, c);
        }
    }
    // golden-section refinement around the best candidate
    let (mut a, mut b) = (best.1 - 0.1, best.1 + 0.1);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    for (d, x) in [(f1, x1), (f2, x2)] {
        if d < best.0 {
            best = (d, x);
        }
    }
    Ok(best)
}
