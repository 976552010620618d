//! Weighted graphs for the simple quantum walk and the standard builders.
//!
//! The walk Hamiltonian is `H = −Σ Δ_ij |i⟩⟨j| + Σ ε_j |j⟩⟨j|`.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::bits::BitString;
use crate::{Error, RMatrix, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub delta: f64,
}

/// Static snapshot of a walk: node energies, hopping amplitudes and
/// optional bit-string labels.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkGraph {
    n: usize,
    onsite: Vec<f64>,
    edges: Vec<Edge>,
    labels: Option<Vec<BitString>>,
}

impl WalkGraph {
    pub fn new(n: usize, onsite: Vec<f64>, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one node".into()));
        }
        if onsite.len() != n {
            return Err(Error::LengthMismatch {
                what: "onsite energies",
                expected: n,
                found: onsite.len(),
            });
        }
        if let Some(k) = onsite.iter().position(|e| !e.is_finite()) {
            return Err(Error::InvalidGraph(format!("onsite energy of node {k} is not finite")));
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if e.i >= n || e.j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) out of range for {n} nodes",
                    e.i, e.j
                )));
            }
            if e.i == e.j {
                return Err(Error::InvalidGraph(format!("self-loop on node {}", e.i)));
            }
            if !e.delta.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) amplitude is not finite",
                    e.i, e.j
                )));
            }
            if !seen.insert((e.i.min(e.j), e.i.max(e.j))) {
                return Err(Error::DuplicateEdge(e.i, e.j));
            }
        }
        Ok(WalkGraph {
            n,
            onsite,
            edges,
            labels: None,
        })
    }

    /// Graph with edges given as `(i, j, Δ)` triples and zero onsite energy.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let edges = edges.iter().map(|&(i, j, delta)| Edge { i, j, delta }).collect();
        Self::new(n, vec![0.0; n], edges)
    }

    /// Attaches node labels; they must be distinct bit strings of one length
    /// `M` with `2^M ≥ n`.
    pub fn with_labels(mut self, labels: Vec<BitString>) -> Result<Self> {
        validate_labels(self.n, &labels)?;
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn onsite(&self) -> &[f64] {
        &self.onsite
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[BitString]> {
        self.labels.as_deref()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.i == node || e.j == node).count()
    }

    /// Neighbour lists `(node, Δ)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.i].push((e.j, e.delta));
            adj[e.j].push((e.i, e.delta));
        }
        adj
    }

    /// `H_ij = −Δ_ij`, `H_jj = ε_j`; exactly symmetric.
    pub fn walk_matrix(&self) -> RMatrix {
        let mut h = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.onsite.clone()));
        for e in &self.edges {
            h[(e.i, e.j)] = -e.delta;
            h[(e.j, e.i)] = -e.delta;
        }
        h
    }

    /// Eigenvalues of the walk matrix in ascending order.
    pub fn spectrum(&self) -> Vec<f64> {
        sorted_eigenvalues(self.walk_matrix())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&GraphJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(text)?;
        j.try_into()
    }
}

pub(crate) fn validate_labels(n: usize, labels: &[BitString]) -> Result<()> {
    if labels.len() != n {
        return Err(Error::LengthMismatch {
            what: "node labels",
            expected: n,
            found: labels.len(),
        });
    }
    let m = labels[0].len();
    if labels.iter().any(|l| l.len() != m) {
        return Err(Error::InvalidGraph("labels must all have the same length".into()));
    }
    if m < usize::BITS as usize && (1usize << m) < n {
        return Err(Error::InvalidGraph(format!("{m}-bit labels cannot name {n} nodes")));
    }
    let distinct: HashSet<&BitString> = labels.iter().collect();
    if distinct.len() != n {
        return Err(Error::InvalidGraph("duplicate node labels".into()));
    }
    Ok(())
}

pub(crate) fn sorted_eigenvalues(h: RMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `n`-node path with per-edge amplitudes and per-node energies. Lines with
/// a power-of-two node count carry the Gray-code labels of the binary line
/// encoding.
pub fn build_line(n: usize, deltas: &[f64], eps: &[f64]) -> Result<WalkGraph> {
    if n == 0 {
        return Err(Error::InvalidGraph("line needs at least one node".into()));
    }
    if deltas.len() != n - 1 {
        return Err(Error::LengthMismatch {
            what: "edge amplitudes",
            expected: n - 1,
            found: deltas.len(),
        });
    }
    let edges = deltas
        .iter()
        .enumerate()
        .map(|(k, &delta)| Edge { i: k, j: k + 1, delta })
        .collect();
    let g = WalkGraph::new(n, eps.to_vec(), edges)?;
    gray_labelled(g)
}

/// Uniform line: `n` nodes, all amplitudes `delta`, zero energies.
pub fn uniform_line(n: usize, delta: f64) -> Result<WalkGraph> {
    build_line(n, &vec![delta; n.saturating_sub(1)], &vec![0.0; n])
}

/// `n`-node cycle with uniform amplitude; `n ≥ 3`.
pub fn build_cycle(n: usize, delta: f64) -> Result<WalkGraph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    let edges = (0..n)
        .map(|k| Edge {
            i: k,
            j: (k + 1) % n,
            delta,
        })
        .collect();
    gray_labelled(WalkGraph::new(n, vec![0.0; n], edges)?)
}

fn gray_labelled(g: WalkGraph) -> Result<WalkGraph> {
    let n = g.n_nodes();
    if n >= 2 && n.is_power_of_two() {
        let m = n.trailing_zeros() as usize;
        let labels = (0..n).map(|p| BitString::gray(p, m)).collect();
        g.with_labels(labels)
    } else {
        Ok(g)
    }
}

/// The `m`-cube: nodes labelled by `m`-bit strings, edges between labels at
/// Hamming distance one.
pub fn build_hypercube(m: usize, delta0: f64) -> Result<WalkGraph> {
    if m == 0 {
        return Err(Error::InvalidArgument("hypercube dimension must be at least 1".into()));
    }
    crate::check_capacity(m)?;
    let n = 1usize << m;
    let mut edges = Vec::with_capacity(m * n / 2);
    for k in 0..n {
        for b in (0..m).rev() {
            let other = k ^ (1 << b);
            if other > k {
                edges.push(Edge {
                    i: k,
                    j: other,
                    delta: delta0,
                });
            }
        }
    }
    let labels = (0..n).map(|k| BitString::from_index(k, m)).collect();
    WalkGraph::new(n, vec![0.0; n], edges)?.with_labels(labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

/// A `d`-dimensional cubic lattice of side `L` with uniform amplitude `Δ_o`
/// and unit lattice spacing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyperlattice {
    pub dim: usize,
    pub side: usize,
    pub delta0: f64,
    pub boundary: Boundary,
}

impl Hyperlattice {
    pub fn new(dim: usize, side: usize, delta0: f64, boundary: Boundary) -> Result<Self> {
        if dim == 0 || side == 0 {
            return Err(Error::InvalidArgument(
                "hyperlattice dimension and side must be positive".into(),
            ));
        }
        side.checked_pow(dim as u32)
            .ok_or_else(|| Error::InvalidArgument("hyperlattice too large".into()))?;
        Ok(Hyperlattice {
            dim,
            side,
            delta0,
            boundary,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.side.pow(self.dim as u32)
    }

    /// Node index of lattice coordinates, axis 0 most significant.
    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.side + c)
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut c = vec![0; self.dim];
        for slot in c.iter_mut().rev() {
            *slot = index % self.side;
            index /= self.side;
        }
        c
    }

    /// Allowed momenta `2πk/L` per axis for the periodic lattice.
    pub fn momenta(&self) -> Vec<f64> {
        (0..self.side)
            .map(|k| 2.0 * std::f64::consts::PI * k as f64 / self.side as f64)
            .collect()
    }
}

/// `ε(p) = 2Δ_o Σ_μ cos p_μ`. The walk matrix of the periodic lattice has
/// eigenvalues `−ε(p)` because it carries `−Δ` off the diagonal.
pub fn band_energy(h: &Hyperlattice, p: &[f64]) -> Result<f64> {
    if p.len() != h.dim {
        return Err(Error::DimensionMismatch {
            expected: h.dim,
            found: p.len(),
        });
    }
    Ok(2.0 * h.delta0 * p.iter().map(|x| x.cos()).sum::<f64>())
}

/// Nearest-neighbour grid. Periodic axes wrap; with `L = 2` the wrap bond
/// coincides with the direct bond and the two merge into amplitude `2Δ_o`.
pub fn build_hyperlattice_graph(h: &Hyperlattice) -> Result<WalkGraph> {
    let n = h.n_nodes();
    let mut edges = Vec::new();
    for node in 0..n {
        let c = h.coords(node);
        for axis in 0..h.dim {
            let x = c[axis];
            let next = match (h.boundary, x + 1 < h.side) {
                (_, true) => Some(x + 1),
                (Boundary::Periodic, false) if h.side >= 3 => Some(0),
                _ => None,
            };
            if let Some(nx) = next {
                let mut d = c.clone();
                d[axis] = nx;
                let delta = if h.boundary == Boundary::Periodic && h.side == 2 {
                    2.0 * h.delta0
                } else {
                    h.delta0
                };
                edges.push(Edge {
                    i: node,
                    j: h.index(&d),
                    delta,
                });
            }
        }
    }
    WalkGraph::new(n, vec![0.0; n], edges)
}

/// On-disk JSON form of a [`WalkGraph`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub onsite: Vec<f64>,
    pub edges: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<BitString>>,
}

impl From<&WalkGraph> for GraphJson {
    fn from(g: &WalkGraph) -> Self {
        GraphJson {
            n: g.n,
            onsite: g.onsite.clone(),
            edges: g.edges.iter().map(|e| (e.i, e.j, e.delta)).collect(),
            labels: g.labels.clone(),
        }
    }
}

impl TryFrom<GraphJson> for WalkGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let edges = j.edges.into_iter().map(|(i, j, delta)| Edge { i, j, delta }).collect();
        let g = WalkGraph::new(j.n, j.onsite, edges)?;
        match j.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn two_node_matrix() {
        let g = WalkGraph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        let h = g.walk_matrix();
        assert_eq!(h, RMatrix::from_row_slice(2, 2, &[0.0, -1.0, -1.0, 0.0]));
    }

    #[test]
    fn single_node_matrix() {
        let g = WalkGraph::new(1, vec![3.0], vec![]).unwrap();
        assert_eq!(g.walk_matrix(), RMatrix::from_element(1, 1, 3.0));
    }

    #[test]
    fn invalid_graphs_rejected() {
        assert!(matches!(
            WalkGraph::from_edges(3, &[(0, 1, 1.0), (1, 0, 2.0)]),
            Err(Error::DuplicateEdge(1, 0))
        ));
        assert!(WalkGraph::from_edges(2, &[(0, 0, 1.0)]).is_err());
        assert!(WalkGraph::from_edges(2, &[(0, 2, 1.0)]).is_err());
        assert!(WalkGraph::new(2, vec![0.0], vec![]).is_err());
        assert!(WalkGraph::new(0, vec![], vec![]).is_err());
    }

    #[test]
    fn line_builder() {
        let g = build_line(2, &[1.0], &[0.0, 0.0]).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert!(build_line(3, &[1.0], &[0.0; 3]).is_err());
        let s = 2f64.sqrt();
        let g = build_line(6, &[1.0, s, 4.0 / 6f64.sqrt(), 5.0 / 3.0, 2.0], &[0.0; 6]).unwrap();
        assert_eq!(g.walk_matrix()[(2, 3)], -4.0 / 6f64.sqrt());
        assert!(g.labels().is_none());
        let g = uniform_line(4, 1.0).unwrap();
        let labels: Vec<String> = g.labels().unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, ["00", "01", "11", "10"]);
    }

    #[test]
    fn cycle_builder() {
        let g = build_cycle(4, 1.0).unwrap();
        for k in 0..4 {
            assert_eq!(g.degree(k), 2);
        }
        assert!(build_cycle(2, 1.0).is_err());
    }

    #[test]
    fn hypercube_structure() {
        let g = build_hypercube(1, 1.0).unwrap();
        assert_eq!((g.n_nodes(), g.edges().len()), (2, 1));
        let g = build_hypercube(3, 1.0).unwrap();
        assert_eq!((g.n_nodes(), g.edges().len()), (8, 12));
        assert!((0..8).all(|k| g.degree(k) == 3));
        let labels = g.labels().unwrap();
        for e in g.edges() {
            assert_eq!(labels[e.i].hamming(&labels[e.j]), 1);
        }
        assert!(build_hypercube(0, 1.0).is_err());
    }

    #[test]
    fn hypercube_spectrum_is_binomial() {
        let m = 4;
        let d = 0.7;
        let ev = build_hypercube(m, d).unwrap().spectrum();
        let mut oracle = Vec::new();
        for k in 0..=m {
            for _ in 0..binom(m, k) {
                oracle.push(-d * (m as f64 - 2.0 * k as f64));
            }
        }
        oracle.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn cube_matches_band_form_at_zero_and_pi() {
        // The cube is the L = 2 periodic lattice, whose merged bonds carry 2Δ_o,
        // so a cube with amplitude Δ is that lattice with Δ_o = Δ/2.
        let d = 1.3;
        let cube = build_hypercube(3, d).unwrap().spectrum();
        let lat = Hyperlattice::new(3, 2, d / 2.0, Boundary::Periodic).unwrap();
        assert_eq!(build_hyperlattice_graph(&lat).unwrap().spectrum().len(), 8);
        let mut band = Vec::new();
        for k in 0..8usize {
            let p: Vec<f64> = (0..3).map(|a| if k >> a & 1 == 1 { PI } else { 0.0 }).collect();
            band.push(-band_energy(&lat, &p).unwrap());
        }
        band.sort_by(f64::total_cmp);
        for (a, b) in cube.iter().zip(&band) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn band_energy_values() {
        let h2 = Hyperlattice::new(2, 4, 1.0, Boundary::Periodic).unwrap();
        assert_eq!(band_energy(&h2, &[0.0, 0.0]).unwrap(), 4.0);
        let h1 = Hyperlattice::new(1, 4, 1.0, Boundary::Periodic).unwrap();
        assert_eq!(band_energy(&h1, &[PI]).unwrap(), -2.0);
        let h3 = Hyperlattice::new(3, 4, 0.5, Boundary::Periodic).unwrap();
        let e = band_energy(&h3, &[PI / 2.0, PI / 3.0, PI]).unwrap();
        assert!((e - (-0.5)).abs() < 1e-15);
        assert!(band_energy(&h3, &[0.0]).is_err());
    }

    #[test]
    fn hyperlattice_graphs() {
        let ring = build_hyperlattice_graph(&Hyperlattice::new(1, 4, 1.0, Boundary::Periodic).unwrap()).unwrap();
        assert_eq!(ring.edges().len(), 4);
        assert!((0..4).all(|k| ring.degree(k) == 2));
        let grid = build_hyperlattice_graph(&Hyperlattice::new(2, 3, 1.0, Boundary::Open).unwrap()).unwrap();
        assert_eq!((grid.n_nodes(), grid.edges().len()), (9, 12));
    }

    #[test]
    fn periodic_ring_spectrum() {
        let h = Hyperlattice::new(1, 8, 1.0, Boundary::Periodic).unwrap();
        let ev = build_hyperlattice_graph(&h).unwrap().spectrum();
        let mut oracle: Vec<f64> = (0..8).map(|k| -2.0 * (2.0 * PI * k as f64 / 8.0).cos()).collect();
        oracle.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let g = build_hypercube(2, 0.25).unwrap();
        let back = WalkGraph::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back, g);
        let g = WalkGraph::new(
            2,
            vec![0.1, 1.0 / 3.0],
            vec![Edge {
                i: 0,
                j: 1,
                delta: 0.1 + 0.2,
            }],
        )
        .unwrap();
        assert_eq!(WalkGraph::from_json(&g.to_json().unwrap()).unwrap(), g);
    }

    #[test]
    fn json_rejects_unknown_fields_and_bad_labels() {
        assert!(WalkGraph::from_json(r#"{"n":1,"onsite":[0],"edges":[],"weights":[]}"#).is_err());
        assert!(WalkGraph::from_json(r#"{"n":2,"onsite":[0,0],"edges":[],"labels":["0","0"]}"#).is_err());
        let g = WalkGraph::from_json(r#"{"n":2,"onsite":[0,0],"edges":[[0,1,1.5]],"labels":["0","1"]}"#).unwrap();
        assert_eq!(g.walk_matrix()[(1, 0)], -1.5);
    }
}
