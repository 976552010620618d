//! First-order Trotter circuits and time-sliced schedules.

use crate::circuit::Circuit;
use crate::encode::{encode, EncodingSpec};
use crate::pauli::{DressedTerm, PauliHamiltonian};
use crate::walkgraph::WalkGraph;
use crate::{Error, Result};

use super::terms::{push_global_phase, push_pauli_evolution};

/// Number of first-order Trotter steps; terms are applied in the
/// Hamiltonian's canonical order within each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrotterPlan {
    pub n_steps: usize,
}

impl TrotterPlan {
    pub fn new(n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::InvalidArgument("Trotter plan needs at least one step".into()));
        }
        Ok(TrotterPlan { n_steps })
    }
}

/// `[Π_k exp(−i t H_k / N)]^N` on the data register plus one ancilla.
/// Identity terms become an explicit global phase.
pub fn trotterize(h: &PauliHamiltonian, t: f64, plan: TrotterPlan) -> Result<Circuit> {
    let m = h.n_qubits();
    let terms = h.real_terms()?;
    let dt = t / plan.n_steps as f64;
    let mut step = Circuit::new(m, 1);
    for (coeff, s) in &terms {
        if s.is_identity() {
            push_global_phase(&mut step, coeff * dt, m)?;
        } else {
            push_pauli_evolution(&mut step, s, &[], coeff * dt, m)?;
        }
    }
    Ok(step.repeat(plan.n_steps))
}

/// Trotter circuit for a Hamiltonian given as projector-dressed strings,
/// keeping the projectors as controls instead of expanding them.
pub fn trotterize_dressed(n_qubits: usize, terms: &[DressedTerm], t: f64, plan: TrotterPlan) -> Result<Circuit> {
    let dt = t / plan.n_steps as f64;
    let mut step = Circuit::new(n_qubits, 1);
    for term in terms {
        if term.string.n_qubits() != n_qubits {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                found: term.string.n_qubits(),
            });
        }
        push_pauli_evolution(&mut step, &term.string, &term.controls, term.coeff * dt, n_qubits)?;
    }
    Ok(step.repeat(plan.n_steps))
}

/// One piece of a piecewise-constant Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub duration: f64,
    pub hamiltonian: PauliHamiltonian,
}

/// Piecewise-constant evolution, earliest segment first.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Schedule {
    pub segments: Vec<Segment>,
}

impl Schedule {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let s = Schedule { segments };
        s.validate()?;
        Ok(s)
    }

    /// Encodes each graph snapshot with `spec`.
    pub fn from_graphs(snapshots: &[(f64, WalkGraph)], spec: &EncodingSpec) -> Result<Self> {
        let segments = snapshots
            .iter()
            .map(|(d, g)| {
                Ok(Segment {
                    duration: *d,
                    hamiltonian: encode(g, spec)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(segments)
    }

    pub fn validate(&self) -> Result<()> {
        let first = self
            .segments
            .first()
            .ok_or_else(|| Error::InvalidArgument("schedule has no segments".into()))?;
        for s in &self.segments {
            if !(s.duration > 0.0 && s.duration.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "segment duration {} must be positive",
                    s.duration
                )));
            }
            if s.hamiltonian.n_qubits() != first.hamiltonian.n_qubits() {
                return Err(Error::DimensionMismatch {
                    expected: first.hamiltonian.n_qubits(),
                    found: s.hamiltonian.n_qubits(),
                });
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.segments.first().map_or(0, |s| s.hamiltonian.n_qubits())
    }

    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

/// Trotter circuits of the segments in time order. `plans` holds one plan
/// per segment, or a single plan shared by all.
pub fn time_sliced(s: &Schedule, plans: &[TrotterPlan]) -> Result<Circuit> {
    s.validate()?;
    if plans.len() != 1 && plans.len() != s.segments.len() {
        return Err(Error::LengthMismatch {
            what: "Trotter plans",
            expected: s.segments.len(),
            found: plans.len(),
        });
    }
    let mut c = Circuit::new(s.n_qubits(), 1);
    for (k, seg) in s.segments.iter().enumerate() {
        let plan = plans[if plans.len() == 1 { 0 } else { k }];
        c.append(&trotterize(&seg.hamiltonian, seg.duration, plan)?)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode_single_excitation;
    use crate::par::Exec;
    use crate::pauli::{Pauli, PauliString};
    use crate::sim::{fidelity, StateVector};
    use crate::synth::exact_propagator;
    use crate::CMatrix;
    use num_complex::Complex64;

    fn err(c: &Circuit, want: &CMatrix) -> f64 {
        let (u, leak) = c.data_unitary(Exec::default()).unwrap();
        assert!(leak < 1e-12);
        (u - want).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn x_plus_z() -> PauliHamiltonian {
        let mut h = PauliHamiltonian::single(1, 0, Pauli::X, 1.0);
        h.add_real(1.0, PauliString::new(vec![Pauli::Z]));
        h
    }

    #[test]
    fn commuting_terms_exact_in_one_step() {
        let mut h = PauliHamiltonian::identity(3, 0.4);
        h.add_real(0.7, PauliString::new(vec![Pauli::Z, Pauli::I, Pauli::Z]));
        h.add_real(-1.1, PauliString::new(vec![Pauli::I, Pauli::Z, Pauli::I]));
        let c = trotterize(&h, 1.3, TrotterPlan::new(1).unwrap()).unwrap();
        let want = exact_propagator(&h.to_matrix().unwrap(), 1.3).unwrap();
        assert!(err(&c, &want) < 1e-12);
    }

    #[test]
    fn first_order_halving() {
        let h = x_plus_z();
        let want = exact_propagator(&h.to_matrix().unwrap(), 1.0).unwrap();
        let e = |n| err(&trotterize(&h, 1.0, TrotterPlan::new(n).unwrap()).unwrap(), &want);
        for n in [8, 16, 32] {
            let ratio = e(2 * n) / e(n);
            assert!((0.4..=0.6).contains(&ratio), "N={n}: {ratio}");
        }
    }

    #[test]
    fn triangle_walk_fidelity() {
        let g = WalkGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let h = encode_single_excitation(&g);
        let c = trotterize(&h, 0.5, TrotterPlan::new(64).unwrap()).unwrap();
        let want = exact_propagator(&h.to_matrix().unwrap(), 0.5).unwrap();
        let psi0 = StateVector::basis(16, 0b1000).unwrap();
        let out = c.apply(&psi0).unwrap();
        let kept: Vec<Complex64> = (0..8).map(|k| out.amplitudes()[k << 1]).collect();
        let got = StateVector::new(kept).unwrap();
        let exact = StateVector::basis(8, 0b100).unwrap().transform(&want).unwrap();
        assert!(fidelity(&got, &exact).unwrap() > 1.0 - 1e-3);
    }

    #[test]
    fn empty_plan_and_schedule_rejected() {
        assert!(TrotterPlan::new(0).is_err());
        assert!(time_sliced(&Schedule::default(), &[TrotterPlan::new(1).unwrap()]).is_err());
    }

    #[test]
    fn schedule_time_order() {
        let h1 = PauliHamiltonian::single(1, 0, Pauli::X, 1.0);
        let h2 = PauliHamiltonian::single(1, 0, Pauli::Z, 1.0);
        let s = Schedule::new(vec![
            Segment {
                duration: 0.4,
                hamiltonian: h1.clone(),
            },
            Segment {
                duration: 0.7,
                hamiltonian: h2.clone(),
            },
        ])
        .unwrap();
        let want = exact_propagator(&h2.to_matrix().unwrap(), 0.7).unwrap()
            * exact_propagator(&h1.to_matrix().unwrap(), 0.4).unwrap();
        let c = time_sliced(&s, &[TrotterPlan::new(1).unwrap()]).unwrap();
        assert!(err(&c, &want) < 1e-12);

        let s = Schedule::new(vec![
            Segment {
                duration: 0.4,
                hamiltonian: x_plus_z(),
            },
            Segment {
                duration: 0.7,
                hamiltonian: h2.clone().plus(&h1.scale_real(0.5)).unwrap(),
            },
        ])
        .unwrap();
        let want = exact_propagator(&s.segments[1].hamiltonian.to_matrix().unwrap(), 0.7).unwrap()
            * exact_propagator(&s.segments[0].hamiltonian.to_matrix().unwrap(), 0.4).unwrap();
        let e = |n| err(&time_sliced(&s, &[TrotterPlan::new(n).unwrap()]).unwrap(), &want);
        assert!(e(64) < e(16) / 3.0);
    }
}
