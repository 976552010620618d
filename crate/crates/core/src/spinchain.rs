//! Open XY chains, their free-fermion walk and the walks on fixed
//! magnetization sectors, plus the column reduction of a walk to a line.

use std::collections::VecDeque;

use nalgebra::DVector;

use crate::bits::BitString;
use crate::pauli::{Pauli, PauliHamiltonian, PauliString};
use crate::walkgraph::{Edge, WalkGraph};
use crate::{check_capacity, Error, RMatrix, Result};

/// Closure tolerance of the column reduction.
pub const COLLAPSE_TOL: f64 = 1e-10;

/// `H = Σ_i −(J_i/2)(X_iX_{i+1} + Y_iY_{i+1}) + Σ_i (h/2) Z_i`, open ends.
#[derive(Clone, Debug, PartialEq)]
pub struct XYChain {
    couplings: Vec<f64>,
    field: f64,
}

impl XYChain {
    pub fn uniform(n_sites: usize, j: f64, h: f64) -> Result<Self> {
        Self::with_couplings(vec![j; n_sites.saturating_sub(1)], h)
    }

    /// Per-bond couplings `J_1 … J_{N−1}`.
    pub fn with_couplings(couplings: Vec<f64>, h: f64) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidArgument("an XY chain needs at least two sites".into()));
        }
        if couplings.iter().chain([&h]).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("chain parameters must be finite".into()));
        }
        Ok(XYChain { couplings, field: h })
    }

    pub fn n_sites(&self) -> usize {
        self.couplings.len() + 1
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn field(&self) -> f64 {
        self.field
    }
}

pub fn xy_hamiltonian(c: &XYChain) -> PauliHamiltonian {
    let n = c.n_sites();
    let s = |ops: &[(usize, Pauli)]| PauliString::from_sparse(n, ops).expect("site in range");
    let mut h = PauliHamiltonian::new(n);
    for (i, &j) in c.couplings.iter().enumerate() {
        h.add_real(-j / 2.0, s(&[(i, Pauli::X), (i + 1, Pauli::X)]));
        h.add_real(-j / 2.0, s(&[(i, Pauli::Y), (i + 1, Pauli::Y)]));
    }
    if c.field != 0.0 {
        for i in 0..n {
            h.add_real(c.field / 2.0, s(&[(i, Pauli::Z)]));
        }
    }
    h
}

/// Free-fermion walk with the scalar offset kept apart from the graph.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionWalk {
    pub graph: WalkGraph,
    pub offset: f64,
}

/// Path with hopping `J_i` and onsite `−h`, plus the offset `N·h/2`.
///
/// A fermion sits where the spin is down, so `spectrum + offset` is the
/// spectrum of the sector with a single `↓`.
pub fn jordan_wigner_walk(c: &XYChain) -> Result<FermionWalk> {
    let n = c.n_sites();
    let edges = c
        .couplings
        .iter()
        .enumerate()
        .map(|(i, &j)| Edge { i, j: i + 1, delta: j })
        .collect();
    Ok(FermionWalk {
        graph: WalkGraph::new(n, vec![-c.field; n], edges)?,
        offset: n as f64 * c.field / 2.0,
    })
}

/// Basis states with `n_exc` up-spins in ascending index order.
pub fn sector_states(n_sites: usize, n_exc: usize) -> Vec<usize> {
    (0..1usize << n_sites)
        .filter(|k| k.count_ones() as usize == n_exc)
        .collect()
}

/// Walk on the `n_exc`-up-spin sector: one node per basis state, an edge
/// of amplitude `J_i` wherever bond `i` swaps `↑↓ ↔ ↓↑`, onsite
/// `(h/2)(2n_exc − N)`. Node labels are the spin strings.
pub fn excitation_graph(c: &XYChain, n_exc: usize) -> Result<WalkGraph> {
    let n = c.n_sites();
    if n_exc == 0 || n_exc >= n {
        return Err(Error::InvalidArgument(format!(
            "excitation number must lie in 1..{n}, got {n_exc}"
        )));
    }
    check_capacity(n)?;
    let states = sector_states(n, n_exc);
    let index_of = |s: usize| states.binary_search(&s).expect("swap stays in sector");
    let mut edges = Vec::new();
    for (a, &s) in states.iter().enumerate() {
        for (i, &j) in c.couplings.iter().enumerate() {
            let pair = (1usize << (n - 1 - i)) | (1usize << (n - 2 - i));
            let bits = s & pair;
            if bits != 0 && bits != pair {
                let b = index_of(s ^ pair);
                if a < b {
                    edges.push(Edge { i: a, j: b, delta: j });
                }
            }
        }
    }
    let onsite = c.field / 2.0 * (2.0 * n_exc as f64 - n as f64);
    let labels = states.iter().map(|&s| BitString::from_index(s, n)).collect();
    WalkGraph::new(states.len(), vec![onsite; states.len()], edges)?.with_labels(labels)
}

/// Distance layers of `g` seen from `start` and the walk projected onto
/// their uniform superpositions.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnProjection {
    pub columns: Vec<Vec<usize>>,
    /// `Δ_k = −⟨c_k|H|c_{k+1}⟩`.
    pub couplings: Vec<f64>,
    /// `⟨c_k|H|c_k⟩`.
    pub onsite: Vec<f64>,
    /// Largest norm of the part of `H|c_k⟩` outside the column span; zero
    /// exactly when the columns span an invariant subspace.
    pub residual: f64,
}

impl ColumnProjection {
    pub fn chain(&self) -> Result<WalkGraph> {
        let edges = self
            .couplings
            .iter()
            .enumerate()
            .map(|(k, &delta)| Edge { i: k, j: k + 1, delta })
            .collect();
        WalkGraph::new(self.onsite.len(), self.onsite.clone(), edges)
    }

    /// Uniform superposition over column `k` as a vector on the full graph.
    pub fn column_state(&self, k: usize, n_nodes: usize) -> DVector<f64> {
        let mut v = DVector::zeros(n_nodes);
        let w = 1.0 / (self.columns[k].len() as f64).sqrt();
        for &node in &self.columns[k] {
            v[node] = w;
        }
        v
    }
}

pub fn column_projection(g: &WalkGraph, start: usize) -> Result<ColumnProjection> {
    let n = g.n_nodes();
    if start >= n {
        return Err(Error::InvalidArgument(format!("start node {start} out of range")));
    }
    let adj = g.adjacency();
    let mut dist = vec![usize::MAX; n];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if dist.contains(&usize::MAX) {
        return Err(Error::InvalidGraph("graph is not connected".into()));
    }
    let depth = dist.iter().max().copied().unwrap_or(0) + 1;
    let mut columns = vec![Vec::new(); depth];
    for (node, &d) in dist.iter().enumerate() {
        columns[d].push(node);
    }
    let w: RMatrix = g.walk_matrix();
    let mut proj = ColumnProjection {
        columns,
        couplings: Vec::with_capacity(depth - 1),
        onsite: Vec::with_capacity(depth),
        residual: 0.0,
    };
    let states: Vec<DVector<f64>> = (0..depth).map(|k| proj.column_state(k, n)).collect();
    for k in 0..depth {
        let hv = &w * &states[k];
        proj.onsite.push(states[k].dot(&hv));
        if k + 1 < depth {
            proj.couplings.push(-states[k + 1].dot(&hv));
        }
        // only neighbouring columns can overlap with H|c_k⟩
        let mut inside = DVector::zeros(n);
        for l in k.saturating_sub(1)..(k + 2).min(depth) {
            inside += &states[l] * states[l].dot(&hv);
        }
        proj.residual = proj.residual.max((hv - inside).norm());
    }
    Ok(proj)
}

/// Weighted path equivalent to `g` seen from `start`; fails unless the
/// column decomposition is exactly closed.
pub fn collapse_to_line(g: &WalkGraph, start: usize) -> Result<WalkGraph> {
    let p = column_projection(g, start)?;
    if p.residual > COLLAPSE_TOL {
        return Err(Error::NotCollapsible(p.residual));
    }
    p.chain()
}
