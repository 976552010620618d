//! Qubit Hamiltonians back to walk graphs on the `2^N` basis states.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::circuit::Gate;
use crate::par::{map_range, Exec};
use crate::pauli::{Pauli, PauliHamiltonian, PauliString};
use crate::walkgraph::{Edge, WalkGraph};
use crate::{check_capacity, CMatrix, Error, Result};

/// Imaginary parts below this are treated as rounding noise.
pub const IMAG_TOL: f64 = 1e-12;

/// `Σ (ε_n Z_n + Δ_n X_n) − Σ_{i≠j} χ_ij Z_i X_j + Σ_{i<j} (V⊥_ij X_iX_j + V∥_ij Z_iZ_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaticQubitHamiltonian {
    pub n_qubits: usize,
    pub eps: Vec<f64>,
    pub delta: Vec<f64>,
    pub chi: Vec<Vec<f64>>,
    pub vperp: Vec<Vec<f64>>,
    pub vpar: Vec<Vec<f64>>,
}

impl StaticQubitHamiltonian {
    pub fn zeros(n_qubits: usize) -> Self {
        let sq = vec![vec![0.0; n_qubits]; n_qubits];
        StaticQubitHamiltonian {
            n_qubits,
            eps: vec![0.0; n_qubits],
            delta: vec![0.0; n_qubits],
            chi: sq.clone(),
            vperp: sq.clone(),
            vpar: sq,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_qubits;
        if n == 0 {
            return Err(Error::InvalidArgument(
                "static Hamiltonian needs at least one qubit".into(),
            ));
        }
        for (what, v) in [("eps coefficients", &self.eps), ("delta coefficients", &self.delta)] {
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    what,
                    expected: n,
                    found: v.len(),
                });
            }
        }
        for (name, m, symmetric) in [
            ("chi", &self.chi, false),
            ("vperp", &self.vperp, true),
            ("vpar", &self.vpar, true),
        ] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidArgument(format!("{name} must be {n}x{n}")));
            }
            for i in 0..n {
                if m[i][i] != 0.0 {
                    return Err(Error::InvalidArgument(format!("{name} diagonal must be zero")));
                }
                for j in 0..i {
                    if symmetric && m[i][j] != m[j][i] {
                        return Err(Error::InvalidArgument(format!("{name} must be symmetric")));
                    }
                }
            }
        }
        let all = self
            .eps
            .iter()
            .chain(&self.delta)
            .chain(self.chi.iter().flatten())
            .chain(self.vperp.iter().flatten())
            .chain(self.vpar.iter().flatten());
        if all.into_iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        Ok(())
    }

    pub fn to_pauli(&self) -> Result<PauliHamiltonian> {
        self.validate()?;
        let n = self.n_qubits;
        let s = |ops: &[(usize, Pauli)]| PauliString::from_sparse(n, ops).expect("in range");
        let mut h = PauliHamiltonian::new(n);
        for a in 0..n {
            h.add_real(self.eps[a], s(&[(a, Pauli::Z)]));
            h.add_real(self.delta[a], s(&[(a, Pauli::X)]));
            for b in 0..n {
                if a != b {
                    h.add_real(-self.chi[a][b], s(&[(a, Pauli::Z), (b, Pauli::X)]));
                }
                if a < b {
                    h.add_real(self.vperp[a][b], s(&[(a, Pauli::X), (b, Pauli::X)]));
                    h.add_real(self.vpar[a][b], s(&[(a, Pauli::Z), (b, Pauli::Z)]));
                }
            }
        }
        Ok(h)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let h: StaticQubitHamiltonian = serde_json::from_str(text)?;
        h.validate()?;
        Ok(h)
    }
}

/// Closed-form walk of a static qubit Hamiltonian on the `2^N` labelled
/// basis states. Qubit `a` flips bit `N−1−a` of the node index.
///
/// With `s_c = ±1` the `Z_c` eigenvalue of node `j` (`+1` for bit 1):
/// * `ε_j = Σ_a s_a ε_a + Σ_{a<b} s_a s_b V∥_ab`;
/// * one-bit hop along `a`: `H_ij = Δ_a − Σ_{c≠a} s_c χ_ca`;
/// * two-bit hop along `a, b`: `H_ij = V⊥_ab`;
///
/// and the walk amplitude is `Δ_ij = −H_ij`.
pub fn static_to_walk(h: &StaticQubitHamiltonian) -> Result<WalkGraph> {
    static_to_walk_with(h, Exec::default())
}

pub fn static_to_walk_with(h: &StaticQubitHamiltonian, exec: Exec) -> Result<WalkGraph> {
    h.validate()?;
    let n = h.n_qubits;
    check_capacity(n)?;
    let dim = 1usize << n;
    let mask = |a: usize| 1usize << (n - 1 - a);
    let spin = |j: usize, a: usize| if j & mask(a) != 0 { 1.0 } else { -1.0 };
    let per_node = map_range(exec.for_len(dim, 64), dim, |j| {
        let mut eps = 0.0;
        for a in 0..n {
            eps += spin(j, a) * h.eps[a];
            for b in a + 1..n {
                eps += spin(j, a) * spin(j, b) * h.vpar[a][b];
            }
        }
        // edges to higher-index partners only, so each pair appears once
        let mut edges = Vec::new();
        for a in 0..n {
            if j & mask(a) != 0 {
                continue;
            }
            let mut amp = h.delta[a];
            for c in (0..n).filter(|&c| c != a) {
                amp -= spin(j, c) * h.chi[c][a];
            }
            if amp != 0.0 {
                edges.push(Edge {
                    i: j,
                    j: j | mask(a),
                    delta: -amp,
                });
            }
            // a is the more significant bit, so flipping both raises the index
            for b in a + 1..n {
                if h.vperp[a][b] != 0.0 {
                    edges.push(Edge {
                        i: j,
                        j: j ^ mask(a) ^ mask(b),
                        delta: -h.vperp[a][b],
                    });
                }
            }
        }
        (eps, edges)
    });
    let mut onsite = Vec::with_capacity(dim);
    let mut edges = Vec::new();
    for (e, es) in per_node {
        onsite.push(e);
        edges.extend(es);
    }
    basis_graph(n, onsite, edges)
}

fn basis_graph(n: usize, onsite: Vec<f64>, edges: Vec<Edge>) -> Result<WalkGraph> {
    let dim = onsite.len();
    let labels = (0..dim).map(|k| BitString::from_index(k, n)).collect();
    WalkGraph::new(dim, onsite, edges)?.with_labels(labels)
}

/// Reads the walk off the dense matrix: `ε_j = H_jj`, `Δ_ij = −H_ij`.
pub fn matrix_to_walk(h: &PauliHamiltonian) -> Result<WalkGraph> {
    matrix_to_walk_with(h, Exec::default())
}

pub fn matrix_to_walk_with(h: &PauliHamiltonian, exec: Exec) -> Result<WalkGraph> {
    let m = h.to_matrix_with(exec)?;
    dense_to_walk(&m, h.n_qubits(), exec)
}

/// Walk of a dense `2^n × 2^n` Hermitian matrix with real entries.
pub fn dense_to_walk(m: &CMatrix, n_qubits: usize, exec: Exec) -> Result<WalkGraph> {
    let dim = m.nrows();
    if m.ncols() != dim || dim != 1usize << n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_qubits,
            found: dim,
        });
    }
    let rows = map_range(exec.for_len(dim, 64), dim, |i| -> Result<Vec<Edge>> {
        let mut out = Vec::new();
        for j in i..dim {
            let z = m[(i, j)];
            if z.im.abs() > IMAG_TOL {
                return Err(Error::ComplexAmplitudes);
            }
            if j > i && z.re != 0.0 {
                out.push(Edge { i, j, delta: -z.re });
            }
        }
        Ok(out)
    });
    let mut edges = Vec::new();
    for r in rows {
        edges.extend(r?);
    }
    let onsite = (0..dim).map(|j| m[(j, j)].re).collect();
    basis_graph(n_qubits, onsite, edges)
}

/// The hypercube picture of one fundamental gate: hops it switches on and
/// the nodes that pick up a relative phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateWalk {
    pub n_qubits: usize,
    pub edges: Vec<(usize, usize)>,
    pub phase_nodes: Vec<usize>,
}

/// `RX(q)` hops along bit `q`, `XX(a, b)` along the face diagonals of bits
/// `a, b`, and `RZ(q)` marks the half-cube with bit `q` set.
pub fn pulse_to_walk_edges(gate: &Gate, n_qubits: usize) -> Result<GateWalk> {
    if gate.qubits().iter().any(|&q| q >= n_qubits) {
        return Err(Error::InvalidArgument(format!("{gate} does not fit {n_qubits} qubits")));
    }
    check_capacity(n_qubits)?;
    let dim = 1usize << n_qubits;
    let mask = |q: usize| 1usize << (n_qubits - 1 - q);
    let flips = |m: usize| (0..dim).filter(|k| k & m == 0).map(|k| (k, k | m)).collect();
    let diagonals = |ma: usize, mb: usize| {
        let mut out: Vec<(usize, usize)> = (0..dim)
            .filter(|k| k & ma == 0)
            .map(|k| (k, k ^ ma ^ mb))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let (edges, phase_nodes) = match *gate {
        Gate::Rx { q, .. } => (flips(mask(q)), Vec::new()),
        Gate::Xx { a, b, .. } => (diagonals(mask(a), mask(b)), Vec::new()),
        Gate::Rz { q, .. } => (Vec::new(), (0..dim).filter(|k| k & mask(q) != 0).collect()),
        _ => return Err(Error::UnsupportedGate(format!("{gate} is not a fundamental pulse"))),
    };
    Ok(GateWalk {
        n_qubits,
        edges,
        phase_nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{encode_binary, EncodingSpec};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, rng: &mut ChaCha8Rng) -> StaticQubitHamiltonian {
        let mut h = StaticQubitHamiltonian::zeros(n);
        for a in 0..n {
            h.eps[a] = rng.gen_range(-1.0..1.0);
            h.delta[a] = rng.gen_range(-1.0..1.0);
            for b in 0..n {
                if a != b {
                    h.chi[a][b] = rng.gen_range(-1.0..1.0);
                }
                if a < b {
                    let (p, q) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    h.vperp[a][b] = p;
                    h.vperp[b][a] = p;
                    h.vpar[a][b] = q;
                    h.vpar[b][a] = q;
                }
            }
        }
        h
    }

    fn max_diff(g: &WalkGraph, m: &CMatrix) -> f64 {
        g.walk_matrix()
            .iter()
            .zip(m.iter())
            .map(|(a, b)| (Complex64::new(*a, 0.0) - b).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn single_qubit_x() {
        let mut h = StaticQubitHamiltonian::zeros(1);
        h.delta[0] = 1.0;
        let g = static_to_walk(&h).unwrap();
        assert_eq!(g.n_nodes(), 2);
        assert_eq!(
            g.edges(),
            &[Edge {
                i: 0,
                j: 1,
                delta: -1.0
            }]
        );
        assert_eq!(g.onsite(), &[0.0, 0.0]);
    }

    #[test]
    fn three_qubit_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random(3, &mut rng);
        let w = static_to_walk(&h).unwrap().walk_matrix();
        // hopping matrix elements as displayed for three qubits
        let (c, d) = (&h.chi, &h.delta);
        let want = [
            ((0, 4), c[1][0] + c[2][0] + d[0]),
            ((1, 5), c[1][0] - c[2][0] + d[0]),
            ((2, 6), c[2][0] - c[1][0] + d[0]),
            ((3, 7), d[0] - c[1][0] - c[2][0]),
            ((0, 2), c[0][1] + c[2][1] + d[1]),
            ((5, 7), d[1] - c[2][1] - c[0][1]),
            ((0, 1), c[0][2] + c[1][2] + d[2]),
            ((6, 7), d[2] - c[1][2] - c[0][2]),
        ];
        for ((i, j), hij) in want {
            assert!((w[(i, j)] - hij).abs() < 1e-14, "{i}{j}");
        }
        let e0 = -h.eps[0] - h.eps[1] - h.eps[2] + h.vpar[0][1] + h.vpar[0][2] + h.vpar[1][2];
        assert!((w[(0, 0)] - e0).abs() < 1e-14);
        assert!((w[(0, 3)] - h.vperp[1][2]).abs() < 1e-14);
        assert!((w[(1, 2)] - h.vperp[1][2]).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_matrix_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            let h = random(n, &mut rng);
            let m = h.to_pauli().unwrap().to_matrix().unwrap();
            let g = static_to_walk(&h).unwrap();
            assert!(max_diff(&g, &m) < 1e-12, "N={n}");
            let g2 = matrix_to_walk(&h.to_pauli().unwrap()).unwrap();
            assert!((g.walk_matrix() - g2.walk_matrix()).amax() < 1e-12);
        }
    }

    #[test]
    fn binary_round_trip() {
        let g = WalkGraph::new(
            4,
            vec![0.1, 0.2, -0.3, 0.0],
            vec![
                Edge { i: 0, j: 3, delta: 0.4 },
                Edge {
                    i: 1,
                    j: 2,
                    delta: -1.0,
                },
            ],
        )
        .unwrap();
        let back = matrix_to_walk(&encode_binary(&g, &EncodingSpec::binary()).unwrap()).unwrap();
        assert!((back.walk_matrix() - g.walk_matrix()).amax() < 1e-15);
    }

    #[test]
    fn minus_x_on_two_qubits() {
        let h = PauliHamiltonian::single(2, 0, Pauli::X, -1.0);
        let g = matrix_to_walk(&h).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert!(g.edges().iter().all(|e| e.delta == 1.0 && e.j == e.i + 2));
    }

    #[test]
    fn complex_amplitudes_rejected() {
        let h = PauliHamiltonian::single(1, 0, Pauli::Y, 1.0);
        assert!(matches!(matrix_to_walk(&h), Err(Error::ComplexAmplitudes)));
    }

    #[test]
    fn gate_pictures() {
        let rx = pulse_to_walk_edges(&Gate::Rx { q: 0, theta: 0.3 }, 3).unwrap();
        assert_eq!(rx.edges, vec![(0, 4), (1, 5), (2, 6), (3, 7)]);
        let xx = pulse_to_walk_edges(&Gate::Xx { a: 1, b: 2, chi: 0.3 }, 3).unwrap();
        assert_eq!(xx.edges, vec![(0, 3), (1, 2), (4, 7), (5, 6)]);
        let rz = pulse_to_walk_edges(&Gate::Rz { q: 1, theta: 0.3 }, 3).unwrap();
        assert!(rz.edges.is_empty());
        assert_eq!(rz.phase_nodes, vec![2, 3, 6, 7]);
        assert!(pulse_to_walk_edges(&Gate::H { q: 0 }, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random(3, &mut rng);
        assert_eq!(StaticQubitHamiltonian::from_json(&h.to_json().unwrap()).unwrap(), h);
        let mut bad = h.clone();
        bad.vpar[0][1] += 1.0;
        assert!(bad.validate().is_err());
    }
}
