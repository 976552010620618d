//! Circuits for single Hamiltonian terms.

use std::f64::consts::FRAC_PI_2;

use crate::bits::{BitString, Control};
use crate::circuit::{Circuit, Gate, TargetOp};
use crate::encode::line_hop_terms;
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result};

/// `exp(−iε|z̄⟩⟨z̄|)` on `|z̄|` data qubits with one ancilla: the label is
/// copied onto the ancilla by a polarity-matched multi-controlled `X`, the
/// ancilla picks up `A_ε`, and the copy is undone.
pub fn synth_onsite(label: &BitString, eps: f64) -> Result<Circuit> {
    let m = label.len();
    let mut c = Circuit::new(m, 1);
    push_onsite(&mut c, label, eps, m)?;
    Ok(c)
}

pub(crate) fn push_onsite(c: &mut Circuit, label: &BitString, eps: f64, ancilla: usize) -> Result<()> {
    let controls: Vec<Control> = label
        .bits()
        .iter()
        .enumerate()
        .map(|(q, &up)| Control { qubit: q, up })
        .collect();
    let copy = Gate::Mc {
        controls,
        target: ancilla,
        op: TargetOp::X,
    };
    c.push(copy.clone())?;
    c.push(Gate::APhase { q: ancilla, eps })?;
    c.push(copy)
}

/// `exp(−iθ·P·Π ℙ)` on the register of `string` plus one ancilla.
///
/// Each `X`/`Y` letter is rotated onto the `Z` axis, a CNOT ladder writes
/// the parity of the support onto the ancilla, and an `RZ` on the ancilla
/// (controlled by the projectors, if any) applies the phase. The result is
/// exact, including the phase.
pub fn synth_pauli_evolution(string: &PauliString, controls: &[Control], theta: f64) -> Result<Circuit> {
    let m = string.n_qubits();
    let mut c = Circuit::new(m, 1);
    push_pauli_evolution(&mut c, string, controls, theta, m)?;
    Ok(c)
}

pub(crate) fn push_pauli_evolution(
    c: &mut Circuit,
    string: &PauliString,
    controls: &[Control],
    theta: f64,
    ancilla: usize,
) -> Result<()> {
    let sign = match string.phase_power() {
        0 => 1.0,
        2 => -1.0,
        _ => return Err(Error::InvalidArgument(format!("{string} is not Hermitian"))),
    };
    let support = string.support();
    if let Some(ctl) = controls.iter().find(|ctl| support.contains(&ctl.qubit)) {
        return Err(Error::InvalidArgument(format!(
            "projector on qubit {} overlaps the Pauli string",
            ctl.qubit
        )));
    }
    let letters = string.letters();
    // H X H = −Z and RX(π/2) Y RX(−π/2) = Z in this convention
    let mut into = Vec::new();
    let mut flips = 0;
    for &q in &support {
        match letters[q] {
            Pauli::X => {
                into.push(Gate::H { q });
                flips += 1;
            }
            Pauli::Y => into.push(Gate::Rx { q, theta: FRAC_PI_2 }),
            _ => {}
        }
    }
    // a Z string has eigenvalue (−1)^{w + parity}
    let parity_sign = if (support.len() + flips).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let phi = -2.0 * theta * sign * parity_sign;
    let ladder: Vec<Gate> = support
        .iter()
        .map(|&q| Gate::Cnot {
            control: q,
            target: ancilla,
        })
        .collect();
    for g in into.iter().chain(&ladder) {
        c.push(g.clone())?;
    }
    if controls.is_empty() {
        c.push(Gate::Rz { q: ancilla, theta: phi })?;
    } else {
        c.push(Gate::Mc {
            controls: controls.to_vec(),
            target: ancilla,
            op: TargetOp::Rz(phi),
        })?;
    }
    for g in ladder
        .iter()
        .rev()
        .chain(into.iter().rev().map(|g| g.inverse()).collect::<Vec<_>>().iter())
    {
        c.push(g.clone())?;
    }
    Ok(())
}

/// `e^{−iθ}` on the whole register, written on a `↓` ancilla.
pub(crate) fn push_global_phase(c: &mut Circuit, theta: f64, ancilla: usize) -> Result<()> {
    c.push(Gate::X { q: ancilla })?;
    c.push(Gate::APhase { q: ancilla, eps: theta })?;
    c.push(Gate::X { q: ancilla })
}

/// One first-order step `Π_k exp(iθ X_k Π ℙ)` of the uniform line walk,
/// `θ = Δ·δt`, as multi-controlled `RX(−2θ)` rotations from the least
/// significant bit upwards. With `cycle` the closing bond of the
/// `2^N`-cycle follows last.
pub fn synth_line_walk_step(n_qubits: usize, theta: f64, cycle: bool) -> Result<Circuit> {
    let mut c = Circuit::new(n_qubits, 0);
    for t in line_hop_terms(n_qubits, 1.0, cycle)? {
        let q = t.string.support()[0];
        let angle = 2.0 * t.coeff * theta;
        let g = if t.controls.is_empty() {
            Gate::Rx { q, theta: angle }
        } else {
            Gate::Mc {
                controls: t.controls,
                target: q,
                op: TargetOp::Rx(angle),
            }
        };
        c.push(g)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{encode_binary, line_qubit_hamiltonian, EncodingSpec};
    use crate::par::Exec;
    use crate::pauli::{DressedTerm, PauliHamiltonian};
    use crate::synth::exact_propagator;
    use crate::walkgraph::build_cycle;
    use crate::CMatrix;
    use num_complex::Complex64;

    fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_exact(c: &Circuit, h: &PauliHamiltonian) {
        let (u, leak) = c.data_unitary(Exec::default()).unwrap();
        assert!(leak < 1e-12);
        let want = exact_propagator(&h.to_matrix().unwrap(), 1.0).unwrap();
        assert!(max_diff(&u, &want) < 1e-10, "{}", max_diff(&u, &want));
    }

    #[test]
    fn onsite_phase_lands_on_label() {
        let label: BitString = "110".parse().unwrap();
        let c = synth_onsite(&label, 0.8).unwrap();
        let (u, leak) = c.data_unitary(Exec::default()).unwrap();
        assert!(leak < 1e-15);
        for k in 0..8 {
            let want = if k == 0b110 {
                Complex64::cis(-0.8)
            } else {
                Complex64::new(1.0, 0.0)
            };
            assert!((u[(k, k)] - want).norm() < 1e-14);
        }
        let one = synth_onsite(&"1".parse().unwrap(), 0.3).unwrap();
        let (u, _) = one.data_unitary(Exec::default()).unwrap();
        assert!((u[(1, 1)] - Complex64::cis(-0.3)).norm() < 1e-14);
        let zero = synth_onsite(&label, 0.0).unwrap();
        let (u, _) = zero.data_unitary(Exec::default()).unwrap();
        assert!(max_diff(&u, &CMatrix::identity(8, 8)) < 1e-15);
    }

    #[test]
    fn zzz_and_mixed_strings() {
        for letters in [
            vec![Pauli::Z, Pauli::Z, Pauli::Z],
            vec![Pauli::X, Pauli::I, Pauli::Y],
            vec![Pauli::Y, Pauli::Y, Pauli::X],
            vec![Pauli::I, Pauli::X, Pauli::I],
        ] {
            let s = PauliString::new(letters);
            let c = synth_pauli_evolution(&s, &[], 0.37).unwrap();
            check_exact(&c, &PauliHamiltonian::from_string(Complex64::new(0.37, 0.0), s));
        }
    }

    #[test]
    fn projector_dressed_string() {
        // ℙ↑ ℙ↓ ℙ↑ X Y X
        let s = PauliString::from_sparse(6, &[(3, Pauli::X), (4, Pauli::Y), (5, Pauli::X)]).unwrap();
        let controls = vec![Control::up(0), Control::down(1), Control::up(2)];
        let c = synth_pauli_evolution(&s, &controls, -0.6).unwrap();
        let term = DressedTerm {
            coeff: -0.6,
            controls,
            string: s,
        };
        check_exact(&c, &term.to_hamiltonian().unwrap());
    }

    #[test]
    fn zero_angle_is_identity() {
        let s = PauliString::new(vec![Pauli::X, Pauli::Z]);
        let (u, _) = synth_pauli_evolution(&s, &[], 0.0)
            .unwrap()
            .data_unitary(Exec::default())
            .unwrap();
        assert!(max_diff(&u, &CMatrix::identity(4, 4)) < 1e-15);
    }

    #[test]
    fn overlapping_control_rejected() {
        let s = PauliString::new(vec![Pauli::X, Pauli::Z]);
        assert!(synth_pauli_evolution(&s, &[Control::up(0)], 0.1).is_err());
    }

    #[test]
    fn single_qubit_line_step() {
        let c = synth_line_walk_step(1, 0.25, false).unwrap();
        assert_eq!(c.gates(), &[Gate::Rx { q: 0, theta: -0.5 }]);
    }

    #[test]
    fn line_step_converges() {
        let h = line_qubit_hamiltonian(3, &[1.0; 7], &[0.0; 8]).unwrap();
        let want = exact_propagator(&h.to_matrix().unwrap(), 1.0).unwrap();
        let steps = 128;
        let c = synth_line_walk_step(3, 1.0 / steps as f64, false)
            .unwrap()
            .repeat(steps);
        let u = c.unitary().unwrap();
        assert!(max_diff(&u, &want) < 1e-2);
    }

    #[test]
    fn cycle_step_converges() {
        let h = encode_binary(&build_cycle(8, 1.0).unwrap(), &EncodingSpec::binary()).unwrap();
        let want = exact_propagator(&h.to_matrix().unwrap(), 0.5).unwrap();
        let steps = 256;
        let c = synth_line_walk_step(3, 0.5 / steps as f64, true).unwrap().repeat(steps);
        let d = max_diff(&c.unitary().unwrap(), &want);
        assert!(d < 1e-2, "{d}");
    }
}
