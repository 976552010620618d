//! Gate-level circuits over data qubits followed by ancillas, with exact
//! state-vector and unitary evaluation.

pub mod matrices;
mod text;

use num_complex::Complex64;
use std::fmt;

use crate::bits::Control;
use crate::par::{self, Exec};
use crate::sim::StateVector;
use crate::{check_capacity, CMatrix, Error, Result};

/// Operation applied to the target of a multi-controlled gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TargetOp {
    X,
    Rx(f64),
    Rz(f64),
    APhase(f64),
}

impl TargetOp {
    pub fn matrix(&self) -> CMatrix {
        match *self {
            TargetOp::X => matrices::x(),
            TargetOp::Rx(t) => matrices::rx(t),
            TargetOp::Rz(t) => matrices::rz(t),
            TargetOp::APhase(e) => matrices::aphase(e),
        }
    }

    pub fn inverse(&self) -> TargetOp {
        match *self {
            TargetOp::X => TargetOp::X,
            TargetOp::Rx(t) => TargetOp::Rx(-t),
            TargetOp::Rz(t) => TargetOp::Rz(-t),
            TargetOp::APhase(e) => TargetOp::APhase(-e),
        }
    }

    fn angle(&self) -> Option<f64> {
        match *self {
            TargetOp::X => None,
            TargetOp::Rx(t) | TargetOp::Rz(t) | TargetOp::APhase(t) => Some(t),
        }
    }
}

/// One instruction. Qubit indices are 0-based over the whole register
/// (data qubits first, then ancillas).
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Rx {
        q: usize,
        theta: f64,
    },
    Ry {
        q: usize,
        theta: f64,
    },
    Rz {
        q: usize,
        theta: f64,
    },
    H {
        q: usize,
    },
    X {
        q: usize,
    },
    /// `diag(1, e^{−iε})`.
    APhase {
        q: usize,
        eps: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// Controlled `RX(θ)`.
    Crx {
        control: usize,
        target: usize,
        theta: f64,
    },
    /// Controlled `T_k`.
    Crk {
        control: usize,
        target: usize,
        k: u32,
    },
    /// `diag(1, 1, 1, e^{iφ})`.
    Cphase {
        control: usize,
        target: usize,
        phi: f64,
    },
    Swap {
        a: usize,
        b: usize,
    },
    /// `exp(iχ X_a X_b)`.
    Xx {
        a: usize,
        b: usize,
        chi: f64,
    },
    Toffoli {
        c1: usize,
        c2: usize,
        target: usize,
    },
    /// `op` on `target` when every control matches its polarity.
    Mc {
        controls: Vec<Control>,
        target: usize,
        op: TargetOp,
    },
}

impl Gate {
    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Rx { q, .. }
            | Gate::Ry { q, .. }
            | Gate::Rz { q, .. }
            | Gate::H { q }
            | Gate::X { q }
            | Gate::APhase { q, .. } => vec![*q],
            Gate::Cnot { control, target }
            | Gate::Crx { control, target, .. }
            | Gate::Crk { control, target, .. }
            | Gate::Cphase { control, target, .. } => vec![*control, *target],
            Gate::Swap { a, b } | Gate::Xx { a, b, .. } => vec![*a, *b],
            Gate::Toffoli { c1, c2, target } => vec![*c1, *c2, *target],
            Gate::Mc { controls, target, .. } => {
                let mut v: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                v.push(*target);
                v
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.qubits().len()
    }

    fn angle(&self) -> Option<f64> {
        match self {
            Gate::Rx { theta, .. } | Gate::Ry { theta, .. } | Gate::Rz { theta, .. } => Some(*theta),
            Gate::APhase { eps, .. } => Some(*eps),
            Gate::Crx { theta, .. } => Some(*theta),
            Gate::Cphase { phi, .. } => Some(*phi),
            Gate::Xx { chi, .. } => Some(*chi),
            Gate::Mc { op, .. } => op.angle(),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Gate {
        match self.clone() {
            Gate::Rx { q, theta } => Gate::Rx { q, theta: -theta },
            Gate::Ry { q, theta } => Gate::Ry { q, theta: -theta },
            Gate::Rz { q, theta } => Gate::Rz { q, theta: -theta },
            Gate::APhase { q, eps } => Gate::APhase { q, eps: -eps },
            Gate::Crx { control, target, theta } => Gate::Crx {
                control,
                target,
                theta: -theta,
            },
            Gate::Crk { control, target, k } => Gate::Cphase {
                control,
                target,
                phi: -matrices::rk_angle(k),
            },
            Gate::Cphase { control, target, phi } => Gate::Cphase {
                control,
                target,
                phi: -phi,
            },
            Gate::Xx { a, b, chi } => Gate::Xx { a, b, chi: -chi },
            Gate::Mc { controls, target, op } => Gate::Mc {
                controls,
                target,
                op: op.inverse(),
            },
            g => g,
        }
    }

    /// Same gate with every qubit index passed through `f`.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Gate {
        match self.clone() {
            Gate::Rx { q, theta } => Gate::Rx { q: f(q), theta },
            Gate::Ry { q, theta } => Gate::Ry { q: f(q), theta },
            Gate::Rz { q, theta } => Gate::Rz { q: f(q), theta },
            Gate::H { q } => Gate::H { q: f(q) },
            Gate::X { q } => Gate::X { q: f(q) },
            Gate::APhase { q, eps } => Gate::APhase { q: f(q), eps },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(control),
                target: f(target),
            },
            Gate::Crx { control, target, theta } => Gate::Crx {
                control: f(control),
                target: f(target),
                theta,
            },
            Gate::Crk { control, target, k } => Gate::Crk {
                control: f(control),
                target: f(target),
                k,
            },
            Gate::Cphase { control, target, phi } => Gate::Cphase {
                control: f(control),
                target: f(target),
                phi,
            },
            Gate::Swap { a, b } => Gate::Swap { a: f(a), b: f(b) },
            Gate::Xx { a, b, chi } => Gate::Xx { a: f(a), b: f(b), chi },
            Gate::Toffoli { c1, c2, target } => Gate::Toffoli {
                c1: f(c1),
                c2: f(c2),
                target: f(target),
            },
            Gate::Mc { controls, target, op } => Gate::Mc {
                controls: controls
                    .into_iter()
                    .map(|c| Control {
                        qubit: f(c.qubit),
                        up: c.up,
                    })
                    .collect(),
                target: f(target),
                op,
            },
        }
    }

    /// Local form: controls, ordered target qubits and the target matrix.
    fn local(&self) -> Local {
        let one = |q: usize, m: CMatrix| Local {
            controls: vec![],
            targets: vec![q],
            m,
        };
        let ctl = |c: usize, t: usize, m: CMatrix| Local {
            controls: vec![Control::up(c)],
            targets: vec![t],
            m,
        };
        match self {
            Gate::Rx { q, theta } => one(*q, matrices::rx(*theta)),
            Gate::Ry { q, theta } => one(*q, matrices::ry(*theta)),
            Gate::Rz { q, theta } => one(*q, matrices::rz(*theta)),
            Gate::H { q } => one(*q, matrices::h()),
            Gate::X { q } => one(*q, matrices::x()),
            Gate::APhase { q, eps } => one(*q, matrices::aphase(*eps)),
            Gate::Cnot { control, target } => ctl(*control, *target, matrices::x()),
            Gate::Crx { control, target, theta } => ctl(*control, *target, matrices::rx(*theta)),
            Gate::Crk { control, target, k } => ctl(*control, *target, matrices::tk(*k)),
            Gate::Cphase { control, target, phi } => ctl(*control, *target, matrices::aphase(-phi)),
            Gate::Swap { a, b } => Local {
                controls: vec![],
                targets: vec![*a, *b],
                m: matrices::swap(),
            },
            Gate::Xx { a, b, chi } => Local {
                controls: vec![],
                targets: vec![*a, *b],
                m: matrices::xx(*chi),
            },
            Gate::Toffoli { c1, c2, target } => Local {
                controls: vec![Control::up(*c1), Control::up(*c2)],
                targets: vec![*target],
                m: matrices::x(),
            },
            Gate::Mc { controls, target, op } => Local {
                controls: controls.clone(),
                targets: vec![*target],
                m: op.matrix(),
            },
        }
    }

    /// Dense matrix over [`Gate::qubits`] in that order.
    pub fn matrix(&self) -> CMatrix {
        let l = self.local();
        let pol: Vec<bool> = l.controls.iter().map(|c| c.up).collect();
        if pol.is_empty() {
            l.m
        } else {
            matrices::multi_controlled(&pol, &l.m)
        }
    }
}

/// Gate lowered to bit masks over a concrete register.
struct Local {
    controls: Vec<Control>,
    targets: Vec<usize>,
    m: CMatrix,
}

struct Kernel {
    ctrl_mask: usize,
    ctrl_want: usize,
    /// Bit of each target, most significant local bit first.
    target_bits: Vec<usize>,
    target_mask: usize,
    m: Vec<Complex64>,
    d: usize,
}

impl Kernel {
    fn new(g: &Gate, total: usize) -> Kernel {
        let l = g.local();
        let bit = |q: usize| 1usize << (total - 1 - q);
        let mut k = Kernel {
            ctrl_mask: 0,
            ctrl_want: 0,
            target_bits: l.targets.iter().map(|&q| bit(q)).collect(),
            target_mask: 0,
            d: l.m.nrows(),
            m: Vec::new(),
        };
        for c in &l.controls {
            k.ctrl_mask |= bit(c.qubit);
            if c.up {
                k.ctrl_want |= bit(c.qubit);
            }
        }
        k.target_mask = k.target_bits.iter().fold(0, |a, b| a | b);
        k.m = (0..k.d)
            .flat_map(|r| (0..k.d).map(move |c| (r, c)))
            .map(|(r, c)| l.m[(r, c)])
            .collect();
        k
    }

    fn spread(&self, local: usize) -> usize {
        let n = self.target_bits.len();
        let mut out = 0;
        for (k, &b) in self.target_bits.iter().enumerate() {
            if local >> (n - 1 - k) & 1 == 1 {
                out |= b;
            }
        }
        out
    }

    fn gather(&self, i: usize) -> usize {
        let n = self.target_bits.len();
        let mut r = 0;
        for (k, &b) in self.target_bits.iter().enumerate() {
            if i & b != 0 {
                r |= 1 << (n - 1 - k);
            }
        }
        r
    }

    /// `out[i] = Σ_c m[r(i)][c] · input[base(i) | spread(c)]`.
    #[inline]
    fn amp(&self, input: &[Complex64], i: usize) -> Complex64 {
        if i & self.ctrl_mask != self.ctrl_want {
            return input[i];
        }
        let r = self.gather(i);
        let base = i & !self.target_mask;
        let row = &self.m[r * self.d..(r + 1) * self.d];
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, &m) in row.iter().enumerate() {
            if m != Complex64::new(0.0, 0.0) {
                acc += m * input[base | self.spread(c)];
            }
        }
        acc
    }
}

/// An ordered gate list over `n_qubits` data qubits and `n_ancillas`
/// ancillas (indices `n_qubits..n_qubits + n_ancillas`).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    n_ancillas: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_ancillas: usize) -> Self {
        Circuit {
            n_qubits,
            n_ancillas,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_ancillas(&self) -> usize {
        self.n_ancillas
    }

    pub fn total_qubits(&self) -> usize {
        self.n_qubits + self.n_ancillas
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gates acting on more than `k` qubits.
    pub fn count_wider_than(&self, k: usize) -> usize {
        self.gates.iter().filter(|g| g.arity() > k).count()
    }

    pub fn validate_gate(&self, g: &Gate) -> Result<()> {
        let qs = g.qubits();
        let total = self.total_qubits();
        for (k, &q) in qs.iter().enumerate() {
            if q >= total {
                return Err(Error::InvalidArgument(format!(
                    "gate {g} uses qubit {} of a {total}-qubit register",
                    q + 1
                )));
            }
            if qs[..k].contains(&q) {
                return Err(Error::InvalidArgument(format!("gate {g} repeats qubit {}", q + 1)));
            }
        }
        if let Some(a) = g.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidArgument(format!("gate {g} has a non-finite angle")));
            }
        }
        if let Gate::Crk { k, .. } = g {
            if *k == 0 {
                return Err(Error::InvalidArgument("CRK needs k ≥ 1".into()));
            }
        }
        Ok(())
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        self.validate_gate(&g)?;
        self.gates.push(g);
        Ok(())
    }

    /// Appends `other`, mapping its qubit `q` to `map[q]`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != other.total_qubits() {
            return Err(Error::LengthMismatch {
                what: "qubit map entries",
                expected: other.total_qubits(),
                found: map.len(),
            });
        }
        for g in &other.gates {
            self.push(g.remap(|q| map[q]))?;
        }
        Ok(())
    }

    /// Appends a circuit over the same register.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.total_qubits() > self.total_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.total_qubits(),
                found: other.total_qubits(),
            });
        }
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(())
    }

    /// The adjoint circuit.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            n_ancillas: self.n_ancillas,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// `n` repetitions in sequence.
    pub fn repeat(&self, n: usize) -> Circuit {
        let mut c = Circuit::new(self.n_qubits, self.n_ancillas);
        for _ in 0..n {
            c.gates.extend(self.gates.iter().cloned());
        }
        c
    }

    /// Same gates over a register with `n_ancillas` ancillas.
    pub fn with_ancillas(&self, n_ancillas: usize) -> Result<Circuit> {
        let mut c = Circuit::new(self.n_qubits, n_ancillas);
        c.append(self)?;
        Ok(c)
    }

    fn kernels(&self) -> Vec<Kernel> {
        let total = self.total_qubits();
        self.gates.iter().map(|g| Kernel::new(g, total)).collect()
    }

    /// Applies every gate to raw amplitudes, one gate at a time.
    pub fn apply_amplitudes(&self, amps: &[Complex64], exec: Exec) -> Result<Vec<Complex64>> {
        let total = self.total_qubits();
        check_capacity(total)?;
        let dim = 1usize << total;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amps.len(),
            });
        }
        let exec = exec.for_len(dim, 1 << 10);
        let mut cur = amps.to_vec();
        let mut next = vec![Complex64::new(0.0, 0.0); dim];
        for k in self.kernels() {
            par::fill_indexed(exec, &mut next, |i| k.amp(&cur, i));
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        self.apply_with(s, Exec::default())
    }

    pub fn apply_with(&self, s: &StateVector, exec: Exec) -> Result<StateVector> {
        let out = self.apply_amplitudes(s.amplitudes(), exec)?;
        Ok(StateVector::from_amplitudes_unchecked(out))
    }

    /// Runs a data-register state with every ancilla in `↓` and returns the
    /// data part of the ancilla-`↓` output together with the leaked norm.
    pub fn apply_data(&self, s: &StateVector, exec: Exec) -> Result<(StateVector, f64)> {
        let a = self.n_ancillas;
        let nd = 1usize << self.n_qubits;
        if s.dim() != nd {
            return Err(Error::DimensionMismatch {
                expected: nd,
                found: s.dim(),
            });
        }
        check_capacity(self.total_qubits())?;
        let mut full = vec![Complex64::new(0.0, 0.0); nd << a];
        for (d, z) in s.amplitudes().iter().enumerate() {
            full[d << a] = *z;
        }
        let out = self.apply_amplitudes(&full, exec)?;
        let kept: Vec<Complex64> = (0..nd).map(|d| out[d << a]).collect();
        let leak = (1.0 - kept.iter().map(|z| z.norm_sqr()).sum::<f64>()).max(0.0).sqrt();
        Ok((StateVector::from_amplitudes_unchecked(kept), leak))
    }

    pub fn unitary(&self) -> Result<CMatrix> {
        self.unitary_with(Exec::default())
    }

    /// Full unitary, one basis column per task.
    pub fn unitary_with(&self, exec: Exec) -> Result<CMatrix> {
        let total = self.total_qubits();
        check_capacity(total)?;
        let inputs: Vec<usize> = (0..1usize << total).collect();
        self.unitary_on_inputs(&inputs, exec)
    }

    /// Columns of the unitary for the listed basis inputs.
    pub fn unitary_on_inputs(&self, inputs: &[usize], exec: Exec) -> Result<CMatrix> {
        let total = self.total_qubits();
        check_capacity(total)?;
        let dim = 1usize << total;
        if let Some(&bad) = inputs.iter().find(|&&i| i >= dim) {
            return Err(Error::InvalidArgument(format!("basis input {bad} out of range")));
        }
        let kernels = self.kernels();
        let run = |input: usize| {
            let mut cur = vec![Complex64::new(0.0, 0.0); dim];
            cur[input] = Complex64::new(1.0, 0.0);
            let mut next = cur.clone();
            for k in &kernels {
                for (i, slot) in next.iter_mut().enumerate() {
                    *slot = k.amp(&cur, i);
                }
                std::mem::swap(&mut cur, &mut next);
            }
            cur
        };
        let cols = par::map_range(exec.for_len(inputs.len(), 2), inputs.len(), |k| run(inputs[k]));
        let mut u = CMatrix::zeros(dim, inputs.len());
        for (k, col) in cols.into_iter().enumerate() {
            u.column_mut(k).copy_from_slice(&col);
        }
        Ok(u)
    }

    /// Action on the data qubits with every ancilla prepared and read out
    /// in `↓`, plus the largest norm leaked into ancilla-excited rows.
    pub fn data_unitary(&self, exec: Exec) -> Result<(CMatrix, f64)> {
        let a = self.n_ancillas;
        let nd = 1usize << self.n_qubits;
        let inputs: Vec<usize> = (0..nd).map(|d| d << a).collect();
        let cols = self.unitary_on_inputs(&inputs, exec)?;
        let mut block = CMatrix::zeros(nd, nd);
        let mut leak: f64 = 0.0;
        for c in 0..nd {
            let mut kept = 0.0;
            for r in 0..nd {
                block[(r, c)] = cols[(r << a, c)];
                kept += cols[(r << a, c)].norm_sqr();
            }
            let total: f64 = cols.column(c).iter().map(|z| z.norm_sqr()).sum();
            leak = leak.max((total - kept).max(0.0).sqrt());
        }
        Ok((block, leak))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::gate_line(self))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
