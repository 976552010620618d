//! Walk graphs to qubit Hamiltonians: the single-excitation encoding (one
//! qubit per node) and the binary encoding (node labels as basis states).

use serde::{Deserialize, Serialize};

use crate::bits::{qubits_for, BitString, Control};
use crate::par::{map_range, Exec};
use crate::pauli::{hop_string, projector_string, DressedTerm, Pauli, PauliHamiltonian, PauliString};
use crate::walkgraph::{build_line, validate_labels, WalkGraph};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    SingleExcitation,
    Binary,
}

/// Encoding choice plus, for the binary scheme, an optional explicit label
/// per node.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodingSpec {
    pub scheme: Scheme,
    pub labels: Option<Vec<BitString>>,
}

impl EncodingSpec {
    pub fn single_excitation() -> Self {
        EncodingSpec {
            scheme: Scheme::SingleExcitation,
            labels: None,
        }
    }

    pub fn binary() -> Self {
        EncodingSpec {
            scheme: Scheme::Binary,
            labels: None,
        }
    }

    pub fn with_labels(labels: Vec<BitString>) -> Self {
        EncodingSpec {
            scheme: Scheme::Binary,
            labels: Some(labels),
        }
    }

    /// Explicit labels, else the graph's own, else the binary expansion of
    /// the node index on `⌈log₂ n⌉` bits.
    pub fn resolve_labels(&self, g: &WalkGraph) -> Result<Vec<BitString>> {
        let labels = match (&self.labels, g.labels()) {
            (Some(l), _) => l.clone(),
            (None, Some(l)) => l.to_vec(),
            (None, None) => {
                let m = qubits_for(g.n_nodes());
                (0..g.n_nodes()).map(|k| BitString::from_index(k, m)).collect()
            }
        };
        validate_labels(g.n_nodes(), &labels)?;
        Ok(labels)
    }

    /// Register width of the encoded Hamiltonian.
    pub fn n_qubits(&self, g: &WalkGraph) -> Result<usize> {
        match self.scheme {
            Scheme::SingleExcitation => Ok(g.n_nodes()),
            Scheme::Binary => Ok(self.resolve_labels(g)?[0].len()),
        }
    }
}

pub fn encode(g: &WalkGraph, spec: &EncodingSpec) -> Result<PauliHamiltonian> {
    match spec.scheme {
        Scheme::SingleExcitation => Ok(encode_single_excitation(g)),
        Scheme::Binary => encode_binary(g, spec),
    }
}

/// `−Σ Δ_ij (X_iX_j + Y_iY_j)/2 + Σ ε_j (I + Z_j)/2` on one qubit per node.
pub fn encode_single_excitation(g: &WalkGraph) -> PauliHamiltonian {
    let m = g.n_nodes();
    let mut h = PauliHamiltonian::new(m);
    for e in g.edges() {
        for p in [Pauli::X, Pauli::Y] {
            let s = PauliString::from_sparse(m, &[(e.i, p), (e.j, p)]).expect("edge in range");
            h.add_real(-e.delta / 2.0, s);
        }
    }
    for (j, &eps) in g.onsite().iter().enumerate() {
        if eps != 0.0 {
            h.add_real(eps / 2.0, PauliString::identity(m));
            h.add_real(
                eps / 2.0,
                PauliString::from_sparse(m, &[(j, Pauli::Z)]).expect("node in range"),
            );
        }
    }
    h
}

/// Basis index of the state with only qubit `j` of `m` up.
pub fn excitation_index(j: usize, m: usize) -> usize {
    1 << (m - 1 - j)
}

/// `Σ ε_j |z_j⟩⟨z_j| − Σ Δ_ij (|z_i⟩⟨z_j| + h.c.)` over the node labels.
pub fn encode_binary(g: &WalkGraph, spec: &EncodingSpec) -> Result<PauliHamiltonian> {
    encode_binary_with(g, spec, Exec::default())
}

pub fn encode_binary_with(g: &WalkGraph, spec: &EncodingSpec, exec: Exec) -> Result<PauliHamiltonian> {
    let labels = spec.resolve_labels(g)?;
    let m = labels[0].len();
    crate::check_capacity(m)?;
    let edges = g.edges();
    let onsite = g.onsite();
    let n_terms = edges.len() + onsite.len();
    let parts = map_range(exec.for_len(n_terms, 16), n_terms, |k| -> Result<PauliHamiltonian> {
        if k < edges.len() {
            let e = edges[k];
            Ok(hop_string(&labels[e.i], &labels[e.j])?.scale_real(-e.delta))
        } else {
            let j = k - edges.len();
            if onsite[j] == 0.0 {
                Ok(PauliHamiltonian::new(m))
            } else {
                Ok(projector_string(&labels[j]).scale_real(onsite[j]))
            }
        }
    });
    let mut h = PauliHamiltonian::new(m);
    for p in parts {
        h.add_assign(&p?)?;
    }
    Ok(h)
}

/// 1-based position along the line of the label `x_N … x_1`: the `n`-th
/// binary digit is the parity of the leading `n` bits.
pub fn line_position(x: &BitString) -> usize {
    let mut parity = false;
    let mut pos = 0usize;
    for &b in x.bits() {
        parity ^= b;
        pos = (pos << 1) | parity as usize;
    }
    pos + 1
}

/// Binary-encoded walk on the `2^N`-node line with the Gray labelling.
pub fn line_qubit_hamiltonian(n_qubits: usize, deltas: &[f64], eps: &[f64]) -> Result<PauliHamiltonian> {
    if n_qubits == 0 {
        return Err(Error::InvalidArgument("line register needs at least one qubit".into()));
    }
    crate::check_capacity(n_qubits)?;
    let n = 1usize << n_qubits;
    if eps.len() != n {
        return Err(Error::LengthMismatch {
            what: "onsite energies",
            expected: n,
            found: eps.len(),
        });
    }
    let g = build_line(n, deltas, eps)?;
    encode_binary(&g, &EncodingSpec::binary())
}

/// Hopping part of the uniform line walk as dressed terms, ordered from the
/// least significant bit `x_1`: `−Δ(X_{x1} + X_{x2}ℙ↑(x1) + X_{x3}ℙ↑(x2)ℙ↓(x1) + …)`.
/// With `cycle` the closing bond `X_{xN}ℙ↓(x_{N−1})…ℙ↓(x1)` is appended.
pub fn line_hop_terms(n_qubits: usize, delta: f64, cycle: bool) -> Result<Vec<DressedTerm>> {
    if n_qubits == 0 {
        return Err(Error::InvalidArgument("line register needs at least one qubit".into()));
    }
    // bit x_k sits on register qubit N − k
    let q = |k: usize| n_qubits - k;
    let mut out = Vec::with_capacity(n_qubits + 1);
    for k in 1..=n_qubits {
        let controls = (1..k)
            .rev()
            .map(|j| Control {
                qubit: q(j),
                up: j == k - 1,
            })
            .collect();
        out.push(DressedTerm {
            coeff: -delta,
            controls,
            string: PauliString::from_sparse(n_qubits, &[(q(k), Pauli::X)])?,
        });
    }
    if cycle && n_qubits >= 2 {
        out.push(DressedTerm {
            coeff: -delta,
            controls: (1..n_qubits).rev().map(|j| Control::down(q(j))).collect(),
            string: PauliString::from_sparse(n_qubits, &[(q(n_qubits), Pauli::X)])?,
        });
    }
    Ok(out)
}

/// `D` independent line walks on consecutive `N`-qubit registers, axis 0
/// on the leading qubits.
pub fn hyperlattice_qubit_hamiltonian(
    dim: usize,
    n_qubits_per_axis: usize,
    deltas: &[f64],
    eps: &[f64],
) -> Result<PauliHamiltonian> {
    if dim == 0 {
        return Err(Error::InvalidArgument("hyperlattice dimension must be positive".into()));
    }
    let total = dim * n_qubits_per_axis;
    crate::check_capacity(total)?;
    let line = line_qubit_hamiltonian(n_qubits_per_axis, deltas, eps)?;
    let mut h = PauliHamiltonian::new(total);
    for axis in 0..dim {
        let qubits: Vec<usize> = (axis * n_qubits_per_axis..(axis + 1) * n_qubits_per_axis).collect();
        h.add_assign(&line.embed(total, &qubits)?)?;
    }
    Ok(h)
}
