//! Multi-control expansion and lowering passes.

use super::{
    decompose_cnot, decompose_controlled_phase, decompose_controlled_rx, decompose_swap, decompose_toffoli,
    euler_decompose,
};
use crate::circuit::{Circuit, Gate, TargetOp};
use crate::{Error, Result};

/// Scratch ancillas the ladder expansion of `g` needs.
pub fn scratch_needed(g: &Gate) -> usize {
    match g {
        Gate::Mc { controls, op, .. } => {
            let m = controls.len();
            match op {
                TargetOp::X if m >= 3 => m - 2,
                TargetOp::X => 0,
                _ => m.saturating_sub(1),
            }
        }
        _ => 0,
    }
}

/// Single-control form of `op`, control firing on `↑`.
fn controlled(control: usize, target: usize, op: TargetOp) -> Vec<Gate> {
    match op {
        TargetOp::X => vec![Gate::Cnot { control, target }],
        TargetOp::Rx(theta) => vec![Gate::Crx { control, target, theta }],
        TargetOp::Rz(theta) => vec![
            Gate::Rz {
                q: target,
                theta: theta / 2.0,
            },
            Gate::Cnot { control, target },
            Gate::Rz {
                q: target,
                theta: -theta / 2.0,
            },
            Gate::Cnot { control, target },
        ],
        TargetOp::APhase(eps) => vec![Gate::Cphase {
            control,
            target,
            phi: -eps,
        }],
    }
}

/// Expands a multi-controlled gate into Toffolis, one controlled target
/// operation and `↓`-polarity `X` flips, computing the AND of the controls
/// into `scratch` ancillas (assumed `↓`) and uncomputing it afterwards.
/// Other gates are returned unchanged.
pub fn expand_multicontrol(g: &Gate, scratch: &[usize]) -> Result<Vec<Gate>> {
    let (controls, target, op) = match g {
        Gate::Mc { controls, target, op } => (controls, *target, *op),
        other => return Ok(vec![other.clone()]),
    };
    let need = scratch_needed(g);
    if scratch.len() < need {
        return Err(Error::InsufficientAncillas {
            needed: need,
            available: scratch.len(),
        });
    }
    let flips: Vec<Gate> = controls
        .iter()
        .filter(|c| !c.up)
        .map(|c| Gate::X { q: c.qubit })
        .collect();
    let cq: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
    let m = cq.len();
    let mut out = flips.clone();
    if m == 1 {
        out.extend(controlled(cq[0], target, op));
    } else if m == 2 && op == TargetOp::X {
        out.push(Gate::Toffoli {
            c1: cq[0],
            c2: cq[1],
            target,
        });
    } else {
        // scratch[k] holds c_0 ∧ … ∧ c_{k+1}
        let depth = if op == TargetOp::X { m - 2 } else { m - 1 };
        let mut ladder = vec![Gate::Toffoli {
            c1: cq[0],
            c2: cq[1],
            target: scratch[0],
        }];
        for k in 1..depth {
            ladder.push(Gate::Toffoli {
                c1: cq[k + 1],
                c2: scratch[k - 1],
                target: scratch[k],
            });
        }
        out.extend(ladder.iter().cloned());
        if op == TargetOp::X {
            out.push(Gate::Toffoli {
                c1: cq[m - 1],
                c2: scratch[depth - 1],
                target,
            });
        } else {
            out.extend(controlled(scratch[depth - 1], target, op));
        }
        out.extend(ladder.into_iter().rev());
    }
    out.extend(flips);
    Ok(out)
}

fn mapped(sub: &Circuit, qubits: &[usize]) -> Vec<Gate> {
    sub.gates().iter().map(|g| g.remap(|q| qubits[q])).collect()
}

/// Rewrites every gate on three or more qubits into one- and two-qubit
/// gates. Scratch ancillas for the ladders are appended after the existing
/// register.
pub fn lower_to_two_qubit(c: &Circuit) -> Result<Circuit> {
    let extra = c.gates().iter().map(scratch_needed).max().unwrap_or(0);
    let base = c.total_qubits();
    let scratch: Vec<usize> = (base..base + extra).collect();
    let mut out = Circuit::new(c.n_qubits(), c.n_ancillas() + extra);
    let toffoli = decompose_toffoli();
    for g in c.gates() {
        for h in expand_multicontrol(g, &scratch)? {
            if let Gate::Toffoli { c1, c2, target } = h {
                for x in mapped(&toffoli, &[c1, c2, target]) {
                    out.push(x)?;
                }
            } else {
                out.push(h)?;
            }
        }
    }
    Ok(out)
}

fn fundamental(g: &Gate, out: &mut Vec<Gate>) -> Result<()> {
    let sub = |circ: Circuit, qs: &[usize], out: &mut Vec<Gate>| -> Result<()> {
        for h in mapped(&circ, qs) {
            fundamental(&h, out)?;
        }
        Ok(())
    };
    match g {
        Gate::Rx { .. } | Gate::Rz { .. } | Gate::Xx { .. } => out.push(g.clone()),
        Gate::Ry { q, .. } | Gate::H { q } | Gate::X { q } | Gate::APhase { q, .. } => {
            out.extend(euler_decompose(&g.matrix())?.gates(*q));
        }
        Gate::Cnot { control, target } => sub(decompose_cnot(), &[*control, *target], out)?,
        Gate::Crx { control, target, theta } => sub(decompose_controlled_rx(theta / 2.0), &[*control, *target], out)?,
        Gate::Crk { control, target, k } => sub(
            decompose_controlled_phase(crate::circuit::matrices::rk_angle(*k)),
            &[*control, *target],
            out,
        )?,
        Gate::Cphase { control, target, phi } => sub(decompose_controlled_phase(*phi), &[*control, *target], out)?,
        Gate::Swap { a, b } => sub(decompose_swap(), &[*a, *b], out)?,
        Gate::Toffoli { .. } | Gate::Mc { .. } => {
            return Err(Error::UnsupportedGate(format!(
                "{g} must be lowered to two-qubit gates first"
            )))
        }
    }
    Ok(())
}

/// Rewrites a circuit over `RX`, `RZ` and `XX` only (equal up to a global
/// phase).
pub fn lower_to_fundamental(c: &Circuit) -> Result<Circuit> {
    let two = lower_to_two_qubit(c)?;
    let mut out = Circuit::new(two.n_qubits(), two.n_ancillas());
    let mut buf = Vec::new();
    for g in two.gates() {
        buf.clear();
        fundamental(g, &mut buf)?;
        for h in buf.drain(..) {
            out.push(h)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Control;
    use crate::circuit::matrices;
    use crate::par::Exec;
    use crate::sim::phase_aligned_distance;

    fn mc(polarity: &[bool], op: TargetOp) -> Gate {
        Gate::Mc {
            controls: polarity
                .iter()
                .enumerate()
                .map(|(q, &up)| Control { qubit: q, up })
                .collect(),
            target: polarity.len(),
            op,
        }
    }

    fn check(polarity: &[bool], op: TargetOp) {
        let g = mc(polarity, op);
        let n = polarity.len() + 1;
        let mut c = Circuit::new(n, 0);
        c.push(g.clone()).unwrap();
        let low = lower_to_two_qubit(&c).unwrap();
        assert_eq!(low.n_ancillas(), scratch_needed(&g));
        assert_eq!(low.count_wider_than(2), 0);
        let (u, leak) = low.data_unitary(Exec::default()).unwrap();
        assert!(leak < 1e-12, "leak {leak}");
        let want = matrices::multi_controlled(polarity, &op.matrix());
        let (d, _) = phase_aligned_distance(&u, &want, Exec::default()).unwrap();
        assert!(d < 1e-9, "{polarity:?} {op:?}: {d}");
    }

    #[test]
    fn single_control_needs_no_ancilla() {
        for op in [
            TargetOp::X,
            TargetOp::Rx(0.7),
            TargetOp::Rz(-1.2),
            TargetOp::APhase(0.4),
        ] {
            assert_eq!(scratch_needed(&mc(&[true], op)), 0);
            check(&[true], op);
            check(&[false], op);
        }
    }

    #[test]
    fn two_controls_on_x_is_one_toffoli() {
        let gs = expand_multicontrol(&mc(&[true, true], TargetOp::X), &[]).unwrap();
        assert_eq!(
            gs,
            vec![Gate::Toffoli {
                c1: 0,
                c2: 1,
                target: 2
            }]
        );
        check(&[true, false], TargetOp::X);
    }

    #[test]
    fn ladders_match_dense_matrices() {
        check(&[true, false, true], TargetOp::X);
        check(&[false, false, true, true], TargetOp::X);
        check(&[true, true], TargetOp::Rx(0.9));
        check(&[false, true, true], TargetOp::Rz(0.3));
        check(&[true, false, true], TargetOp::APhase(-2.0));
    }

    #[test]
    fn insufficient_ancillas() {
        let g = mc(&[true, true, true], TargetOp::Rx(1.0));
        assert!(matches!(
            expand_multicontrol(&g, &[10]),
            Err(Error::InsufficientAncillas {
                needed: 2,
                available: 1
            })
        ));
    }

    #[test]
    fn fundamental_lowering_preserves_unitary() {
        let mut c = Circuit::new(3, 0);
        for g in [
            Gate::H { q: 0 },
            Gate::Crk {
                control: 0,
                target: 1,
                k: 3,
            },
            Gate::Swap { a: 1, b: 2 },
            Gate::Crx {
                control: 2,
                target: 0,
                theta: 0.6,
            },
            Gate::Toffoli {
                c1: 2,
                c2: 1,
                target: 0,
            },
            Gate::Ry { q: 2, theta: 0.2 },
            Gate::APhase { q: 1, eps: 0.9 },
        ] {
            c.push(g).unwrap();
        }
        let f = lower_to_fundamental(&c).unwrap();
        assert!(f
            .gates()
            .iter()
            .all(|g| matches!(g, Gate::Rx { .. } | Gate::Rz { .. } | Gate::Xx { .. })));
        let (d, _) = phase_aligned_distance(&f.unitary().unwrap(), &c.unitary().unwrap(), Exec::default()).unwrap();
        assert!(d < 1e-9, "{d}");
    }
}
