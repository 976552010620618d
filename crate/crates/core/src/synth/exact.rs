use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::sim::StateVector;
use crate::{check_capacity, CMatrix, Error, RMatrix, Result};

/// Tolerance on `‖H − H†‖_max`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Relative tolerance on `‖V Λ V† − H‖_max`.
const RECONSTRUCT_TOL: f64 = 1e-10;

/// Eigendecomposition `H = V Λ V†` reused for many evolution times.
#[derive(Clone, Debug)]
pub struct EigenPropagator {
    values: Vec<f64>,
    vectors: CMatrix,
}

impl EigenPropagator {
    pub fn new(h: &CMatrix) -> Result<Self> {
        check_dim(h.nrows(), h.ncols())?;
        let dev = h
            .iter()
            .zip(h.adjoint().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let herm = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm.clone());
        EigenPropagator {
            values: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
        }
        .checked(&herm)
    }

    pub fn from_real(h: &RMatrix) -> Result<Self> {
        check_dim(h.nrows(), h.ncols())?;
        let dev = h
            .iter()
            .zip(h.transpose().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let eig = SymmetricEigen::new(h.clone());
        EigenPropagator {
            values: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
        }
        .checked(&h.map(|x| Complex64::new(x, 0.0)))
    }

    fn checked(self, h: &CMatrix) -> Result<Self> {
        let lambda = CMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&l| Complex64::new(l, 0.0)),
        ));
        let rebuilt = &self.vectors * lambda * self.vectors.adjoint();
        let scale = h.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let dev = (rebuilt - h).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if dev > RECONSTRUCT_TOL * scale {
            return Err(Error::EigenFailure(dev));
        }
        Ok(self)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// `exp(−iHt) = Σ_k e^{−iλ_k t} |v_k⟩⟨v_k|`.
    pub fn at(&self, t: f64) -> CMatrix {
        if t == 0.0 {
            return CMatrix::identity(self.values.len(), self.values.len());
        }
        let phases = DVector::from_iterator(self.values.len(), self.values.iter().map(|&l| Complex64::cis(-l * t)));
        let mut scaled = self.vectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= phases[k];
        }
        scaled * self.vectors.adjoint()
    }

    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        if psi.dim() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: psi.dim(),
            });
        }
        if t == 0.0 {
            return Ok(psi.clone());
        }
        let v = DVector::from_column_slice(psi.amplitudes());
        let mut coeffs = self.vectors.adjoint() * v;
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c *= Complex64::cis(-self.values[k] * t);
        }
        let out = &self.vectors * coeffs;
        Ok(StateVector::from_amplitudes_unchecked(out.iter().copied().collect()))
    }
}

fn check_dim(r: usize, c: usize) -> Result<()> {
    if r != c {
        return Err(Error::DimensionMismatch { expected: r, found: c });
    }
    let bits = usize::BITS - r.max(1).leading_zeros() - 1;
    check_capacity(bits as usize + usize::from(!r.is_power_of_two()))
}

/// `exp(−iHt)` of a Hermitian matrix.
pub fn exact_propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    Ok(EigenPropagator::new(h)?.at(t))
}

/// `exp(−iHt)` of a real symmetric matrix.
pub fn exact_propagator_real(h: &RMatrix, t: f64) -> Result<CMatrix> {
    Ok(EigenPropagator::from_real(h)?.at(t))
}
