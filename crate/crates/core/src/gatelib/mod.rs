//! Gate decompositions over the fundamental set `{RX, RZ, XX(χ)}` and the
//! ancilla constructions for multi-controlled gates.
//!
//! Angle sequences are stated in the crate's rotation convention (see
//! [`crate::circuit::matrices`]); each one is checked against its defining
//! matrix by the tests.

mod lower;

pub use lower::{expand_multicontrol, lower_to_fundamental, lower_to_two_qubit, scratch_needed};

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use crate::circuit::{matrices, Circuit, Gate};
use crate::sim::unitarity_defect;
use crate::{CMatrix, Error, Result};

/// Hamiltonian term switched on by a pulse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PulseTerm {
    /// `ε_j Z_j`.
    Eps(usize),
    /// `−Δ_j X_j`.
    Delta(usize),
    /// `−V⊥_ij X_i X_j`.
    Vperp(usize, usize),
}

/// A piecewise-constant activation of one Hamiltonian term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalPulse {
    pub term: PulseTerm,
    pub strength: f64,
    pub duration: f64,
}

/// `U = e^{iα} RZ(θ) RX(γ) RZ(ξ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler {
    pub alpha: f64,
    pub theta: f64,
    pub gamma: f64,
    pub xi: f64,
}

impl Euler {
    pub fn matrix(&self) -> CMatrix {
        matrices::rz(self.theta) * matrices::rx(self.gamma) * matrices::rz(self.xi) * Complex64::cis(self.alpha)
    }

    /// Time-ordered gates on qubit `q`, skipping zero angles.
    pub fn gates(&self, q: usize) -> Vec<Gate> {
        let mut out = Vec::new();
        if self.xi != 0.0 {
            out.push(Gate::Rz { q, theta: self.xi });
        }
        if self.gamma != 0.0 {
            out.push(Gate::Rx { q, theta: self.gamma });
        }
        if self.theta != 0.0 {
            out.push(Gate::Rz { q, theta: self.theta });
        }
        out
    }
}

/// Wraps into `(−π, π]`, returning the number of `2π` shifts applied.
fn wrap(x: f64) -> (f64, i64) {
    let k = ((x - PI) / TAU).ceil();
    let w = x - k * TAU;
    if w <= -PI {
        (w + TAU, k as i64 - 1)
    } else {
        (w, k as i64)
    }
}

/// Euler angles with `θ, ξ ∈ (−π, π]` and `γ ∈ [0, 2π)`.
pub fn euler_decompose(u: &CMatrix) -> Result<Euler> {
    if u.shape() != (2, 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: u.nrows(),
        });
    }
    let d = unitarity_defect(u);
    if d > 1e-10 {
        return Err(Error::NotUnitary(d));
    }
    // In RZ(θ)RX(γ)RZ(ξ): u00 ∝ cos(γ/2)e^{i(θ+ξ)/2}, u01 ∝ −i sin(γ/2)e^{i(θ−ξ)/2}.
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let v = u / det.sqrt();
    let (a, b) = (v[(0, 0)], v[(0, 1)]);
    let gamma = 2.0 * b.norm().atan2(a.norm());
    let sigma = if a.norm() > 1e-14 { a.arg() } else { 0.0 };
    let delta = if b.norm() > 1e-14 {
        (b * Complex64::new(0.0, 1.0)).arg()
    } else {
        0.0
    };
    let (theta, _) = wrap(sigma + delta);
    let (xi, _) = wrap(sigma - delta);
    let clean = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    let mut e = Euler {
        alpha: 0.0,
        theta: clean(theta),
        gamma: clean(gamma),
        xi: clean(xi),
    };
    let r = e.matrix();
    let overlap: Complex64 = r.iter().zip(u.iter()).map(|(x, y)| x.conj() * y).sum();
    e.alpha = clean(overlap.arg());
    Ok(e)
}

fn two_qubit(gates: Vec<Gate>) -> Circuit {
    let mut c = Circuit::new(2, 0);
    for g in gates {
        c.push(g).expect("two-qubit construction in range");
    }
    c
}

/// CNOT (control qubit 0, target qubit 1) from one `XX(π/4)` pulse and
/// single-qubit rotations.
pub fn decompose_cnot() -> Circuit {
    two_qubit(vec![
        Gate::Rz {
            q: 0,
            theta: -FRAC_PI_2,
        },
        Gate::Rx { q: 0, theta: FRAC_PI_2 },
        Gate::Rz { q: 0, theta: FRAC_PI_2 },
        Gate::Xx {
            a: 0,
            b: 1,
            chi: FRAC_PI_4,
        },
        Gate::Rz {
            q: 0,
            theta: -FRAC_PI_2,
        },
        Gate::Rx {
            q: 0,
            theta: -FRAC_PI_2,
        },
        Gate::Rz { q: 0, theta: PI },
        Gate::Rx {
            q: 1,
            theta: -FRAC_PI_2,
        },
    ])
}

/// `diag(1, 1, 1, e^{iφ})` from one `XX(φ/4)` pulse.
pub fn decompose_controlled_phase(phi: f64) -> Circuit {
    let mut g = Vec::new();
    for q in 0..2 {
        g.push(Gate::Rz { q, theta: FRAC_PI_2 });
        g.push(Gate::Rx { q, theta: FRAC_PI_2 });
        g.push(Gate::Rz { q, theta: -FRAC_PI_2 });
    }
    g.push(Gate::Xx {
        a: 0,
        b: 1,
        chi: phi / 4.0,
    });
    for q in 0..2 {
        g.push(Gate::Rz { q, theta: FRAC_PI_2 });
        g.push(Gate::Rx { q, theta: -FRAC_PI_2 });
        g.push(Gate::Rz {
            q,
            theta: -(FRAC_PI_2 + phi / 2.0),
        });
    }
    two_qubit(g)
}

/// Controlled `T_k`.
pub fn decompose_controlled_rk(k: u32) -> Result<Circuit> {
    if k == 0 {
        return Err(Error::InvalidArgument("controlled-R_k needs k ≥ 1".into()));
    }
    Ok(decompose_controlled_phase(matrices::rk_angle(k)))
}

/// SWAP from three `XX(π/4)` pulses.
pub fn decompose_swap() -> Circuit {
    let mut g = Vec::new();
    for q in 0..2 {
        g.push(Gate::Rz { q, theta: -FRAC_PI_2 });
        g.push(Gate::Rx { q, theta: FRAC_PI_2 });
        g.push(Gate::Rz { q, theta: FRAC_PI_2 });
    }
    g.push(Gate::Xx {
        a: 0,
        b: 1,
        chi: FRAC_PI_4,
    });
    for q in 0..2 {
        g.push(Gate::Rz { q, theta: -FRAC_PI_2 });
        g.push(Gate::Rx { q, theta: -FRAC_PI_2 });
    }
    g.push(Gate::Xx {
        a: 0,
        b: 1,
        chi: FRAC_PI_4,
    });
    for q in 0..2 {
        g.push(Gate::Rz { q, theta: FRAC_PI_2 });
    }
    g.push(Gate::Xx {
        a: 0,
        b: 1,
        chi: FRAC_PI_4,
    });
    two_qubit(g)
}

/// Controlled `RX(2ε)` from two CNOTs and `Z`/`Y` rotations on the target.
pub fn decompose_controlled_rx(eps: f64) -> Circuit {
    two_qubit(vec![
        Gate::Rz {
            q: 1,
            theta: -FRAC_PI_2,
        },
        Gate::Cnot { control: 0, target: 1 },
        Gate::Ry { q: 1, theta: eps },
        Gate::Cnot { control: 0, target: 1 },
        Gate::Ry { q: 1, theta: -eps },
        Gate::Rz { q: 1, theta: FRAC_PI_2 },
    ])
}

/// Toffoli (controls 0, 1; target 2) from CNOTs, `Y`/`Z` rotations and
/// phase gates on the controls.
pub fn decompose_toffoli() -> Circuit {
    let (c1, c2, t) = (0, 1, 2);
    let cx = |control, target| Gate::Cnot { control, target };
    let c_gate = Gate::Rz {
        q: t,
        theta: -FRAC_PI_2,
    };
    let b = Gate::Ry { q: t, theta: FRAC_PI_4 };
    let b_inv = Gate::Ry {
        q: t,
        theta: -FRAC_PI_4,
    };
    let a = [
        Gate::Ry {
            q: t,
            theta: -FRAC_PI_4,
        },
        Gate::Rz { q: t, theta: FRAC_PI_2 },
    ];
    let a_prime = [Gate::Ry { q: t, theta: FRAC_PI_4 }, Gate::Rz { q: t, theta: FRAC_PI_2 }];
    let alpha = |q| Gate::APhase { q, eps: -FRAC_PI_4 };
    let alpha_neg = |q| Gate::APhase { q, eps: FRAC_PI_4 };
    let mut g = vec![c_gate.clone(), cx(c2, t), b.clone(), cx(c2, t), alpha(c2)];
    g.extend(a.iter().cloned());
    g.extend([cx(c1, c2), c_gate.clone(), cx(c2, t), b_inv, cx(c2, t), alpha_neg(c2)]);
    g.extend(a_prime.iter().cloned());
    g.extend([cx(c1, c2), c_gate, cx(c1, t), b, cx(c1, t)]);
    g.extend(a.iter().cloned());
    g.push(alpha(c1));
    let mut c = Circuit::new(3, 0);
    for x in g {
        c.push(x).expect("three-qubit construction in range");
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Exec;
    use crate::sim::{phase_aligned_distance, unitary_distance, StateVector};

    fn dist(c: &Circuit, m: &CMatrix) -> f64 {
        unitary_distance(&c.unitary().unwrap(), m).unwrap()
    }

    #[test]
    fn euler_fixed_points() {
        let e = euler_decompose(&CMatrix::identity(2, 2)).unwrap();
        assert_eq!(
            e,
            Euler {
                alpha: 0.0,
                theta: 0.0,
                gamma: 0.0,
                xi: 0.0
            }
        );
        let e = euler_decompose(&matrices::rx(0.3)).unwrap();
        assert!((e.gamma - 0.3).abs() < 1e-15);
        assert_eq!((e.theta, e.xi, e.alpha), (0.0, 0.0, 0.0));
    }

    #[test]
    fn euler_reconstructs_hadamard_and_friends() {
        let cases = vec![
            matrices::h(),
            matrices::x(),
            matrices::ry(1.1),
            matrices::aphase(0.4),
            matrices::rz(3.0) * matrices::ry(-2.0) * Complex64::cis(0.3),
            -CMatrix::identity(2, 2),
        ];
        for u in cases {
            let e = euler_decompose(&u).unwrap();
            let d = (e.matrix() - &u).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(d < 1e-10, "{u} -> {e:?}");
            assert!(e.theta > -PI && e.theta <= PI);
            assert!(e.xi > -PI && e.xi <= PI);
            assert!(e.gamma >= 0.0 && e.gamma < TAU);
        }
        assert!(euler_decompose(&(matrices::x() * Complex64::new(2.0, 0.0))).is_err());
    }

    #[test]
    fn cnot_matches() {
        let c = decompose_cnot();
        assert!(dist(&c, &matrices::cnot()) < 1e-10);
        assert_eq!(c.gates().iter().filter(|g| matches!(g, Gate::Xx { .. })).count(), 1);
        // |↑↓⟩ → |↑↑⟩
        let out = c.apply(&StateVector::basis(4, 2).unwrap()).unwrap();
        assert!((out.probabilities()[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cnot_makes_bell_state() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::new(vec![
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let p = decompose_cnot().apply(&plus).unwrap().probabilities();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[3] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn controlled_rk_matches() {
        for k in 1..=6 {
            let c = decompose_controlled_rk(k).unwrap();
            assert!(dist(&c, &matrices::crk(k)) < 1e-10, "k={k}");
        }
        let cz = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(
            [1.0, 1.0, 1.0, -1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        ));
        assert!(dist(&decompose_controlled_rk(1).unwrap(), &cz) < 1e-10);
        assert!(decompose_controlled_rk(0).is_err());
    }

    #[test]
    fn swap_matches() {
        let c = decompose_swap();
        assert!(dist(&c, &matrices::swap()) < 1e-10);
        assert_eq!(c.gates().iter().filter(|g| matches!(g, Gate::Xx { .. })).count(), 3);
    }

    #[test]
    fn controlled_rx_matches() {
        for &eps in &[0.0, FRAC_PI_4, -1.3, 2.9] {
            let c = decompose_controlled_rx(eps);
            assert!(dist(&c, &matrices::crx(2.0 * eps)) < 1e-10, "eps={eps}");
        }
        assert!(dist(&decompose_controlled_rx(0.0), &CMatrix::identity(4, 4)) < 1e-10);
    }

    #[test]
    fn toffoli_matches() {
        let c = decompose_toffoli();
        let (d, _) = phase_aligned_distance(&c.unitary().unwrap(), &matrices::toffoli(), Exec::Sequential).unwrap();
        assert!(d < 1e-10, "{d}");
        let out = c.apply(&StateVector::basis(8, 0b110).unwrap()).unwrap();
        assert!((out.probabilities()[0b111] - 1.0).abs() < 1e-12);
        let out = c.apply(&StateVector::basis(8, 0b011).unwrap()).unwrap();
        assert!((out.probabilities()[0b011] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wrap_range() {
        assert_eq!(wrap(PI).0, PI);
        assert!((wrap(-PI).0 - PI).abs() < 1e-15);
        assert!((wrap(3.0 * PI / 2.0).0 + PI / 2.0).abs() < 1e-15);
    }
}
