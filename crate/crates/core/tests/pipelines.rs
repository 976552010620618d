use num_complex::Complex64;
use std::f64::consts::TAU;

use walkforge::decode::{static_to_walk, StaticQubitHamiltonian};
use walkforge::encode::{encode, encode_single_excitation, line_qubit_hamiltonian, EncodingSpec};
use walkforge::sim::{evolve_walk, fidelity, StateVector};
use walkforge::spinchain::{collapse_to_line, column_projection, excitation_graph, jordan_wigner_walk, XYChain};
use walkforge::synth::{exact_propagator, time_sliced, trotterize, Schedule, TrotterPlan};
use walkforge::walkgraph::{
    band_energy, build_hypercube, build_hyperlattice_graph, build_line, Boundary, Hyperlattice, WalkGraph,
};
use walkforge::{CMatrix, Exec};

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn hypercube_collapses_to_binomial_chain() {
    let (m, delta) = (5, 0.8);
    let g = build_hypercube(m, delta).unwrap();
    let chain = collapse_to_line(&g, 0).unwrap();
    assert_eq!(chain.n_nodes(), m + 1);
    let mut got: Vec<(usize, f64)> = chain.edges().iter().map(|e| (e.i.min(e.j), e.delta)).collect();
    got.sort_by_key(|x| x.0);
    for (k, (_, d)) in got.iter().enumerate() {
        let want = delta * (((k + 1) * (m - k)) as f64).sqrt();
        assert!((d - want).abs() < 1e-12, "bond {k}: {d} vs {want}");
    }
    // H = −Δ Σ X_a, so the corner-to-corner amplitude is (i sin Δt)^m
    for s in 1..=10 {
        let t = 0.3 * s as f64;
        let want = (Complex64::i() * (delta * t).sin()).powu(m as u32);
        let full = evolve_walk(&g, &StateVector::basis(1 << m, 0).unwrap(), t).unwrap();
        let short = evolve_walk(&chain, &StateVector::basis(m + 1, 0).unwrap(), t).unwrap();
        assert!((full.amplitudes()[(1 << m) - 1] - want).norm() < 1e-10);
        assert!((short.amplitudes()[m] - want).norm() < 1e-10);
    }
}

#[test]
fn xy_projection_reports_open_columns() {
    let c = XYChain::uniform(6, 1.0, 0.0).unwrap();
    let g = excitation_graph(&c, 3).unwrap();
    let start = g
        .labels()
        .unwrap()
        .iter()
        .position(|l| l.to_string() == "111000")
        .unwrap();
    let p = column_projection(&g, start).unwrap();
    let sizes: Vec<usize> = p.columns.iter().map(Vec::len).collect();
    assert_eq!(sizes, [1, 1, 2, 3, 3, 3, 3, 2, 1, 1]);
    let head = [1.0, 2f64.sqrt(), 4.0 / 6f64.sqrt(), 5.0 / 3.0, 2.0];
    assert!(max_diff(&p.couplings[..5], &head) < 1e-12);
    assert!(p.residual > 1e-3);
    assert!(collapse_to_line(&g, start).is_err());
}

#[test]
fn jordan_wigner_matches_single_down_sector() {
    let c = XYChain::with_couplings(vec![0.4, 1.1, 0.7, 0.9], 0.35).unwrap();
    let jw = jordan_wigner_walk(&c).unwrap();
    let shifted: Vec<f64> = jw.graph.spectrum().iter().map(|e| e + jw.offset).collect();
    let sector = excitation_graph(&c, 4).unwrap().spectrum();
    assert!(max_diff(&shifted, &sector) < 1e-12);
}

#[test]
fn trotter_circuit_follows_the_walk() {
    let g = WalkGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 0.5), (2, 3, 1.0), (0, 3, 0.3)]).unwrap();
    let h = encode_single_excitation(&g);
    let t = 0.9;
    let c = trotterize(&h, t, TrotterPlan::new(200).unwrap()).unwrap();
    let start = 0;
    let walk = evolve_walk(&g, &StateVector::basis(4, start).unwrap(), t).unwrap();
    let register = StateVector::basis(16, 1 << (3 - start)).unwrap();
    let (out, leak) = c.apply_data(&register, Exec::default()).unwrap();
    assert!(leak < 1e-12);
    let kept: Vec<Complex64> = (0..4).map(|j| out.amplitudes()[1 << (3 - j)]).collect();
    // XX and YY are split, so a little weight leaves the one-excitation sector
    let weight: f64 = kept.iter().map(|z| z.norm_sqr()).sum();
    assert!(weight > 1.0 - 1e-5, "{weight}");
    let f = fidelity(&StateVector::normalized(kept).unwrap(), &walk).unwrap();
    assert!(f > 1.0 - 1e-4, "{f}");
}

#[test]
fn time_sliced_schedule_composes_in_order() {
    let a = WalkGraph::from_edges(4, &[(0, 1, 1.0), (2, 3, 0.4)]).unwrap();
    let b = WalkGraph::from_edges(4, &[(1, 2, 0.8), (0, 3, -0.6)]).unwrap();
    let s = Schedule::from_graphs(&[(0.5, a.clone()), (0.7, b.clone())], &EncodingSpec::binary()).unwrap();
    let c = time_sliced(&s, &[TrotterPlan::new(1).unwrap()]).unwrap();
    for k in 0..4 {
        let psi = StateVector::basis(4, k).unwrap();
        let want = evolve_walk(&b, &evolve_walk(&a, &psi, 0.5).unwrap(), 0.7).unwrap();
        let (got, leak) = c.apply_data(&psi, Exec::default()).unwrap();
        assert!(leak < 1e-12);
        assert!(fidelity(&got, &want).unwrap() > 1.0 - 1e-6);
    }
}

#[test]
fn static_decode_evolves_like_the_qubit_hamiltonian() {
    let mut p = StaticQubitHamiltonian::zeros(3);
    p.eps = vec![0.2, -0.4, 0.1];
    p.delta = vec![0.5, 0.3, -0.7];
    p.chi[1][0] = 0.25;
    p.chi[2][1] = -0.15;
    p.vperp[0][2] = 0.35;
    p.vperp[2][0] = 0.35;
    p.vpar[0][1] = 0.45;
    p.vpar[1][0] = 0.45;
    let g = static_to_walk(&p).unwrap();
    let u = exact_propagator(&p.to_pauli().unwrap().to_matrix().unwrap(), 1.7).unwrap();
    for k in 0..8 {
        let psi = StateVector::basis(8, k).unwrap();
        let walk = evolve_walk(&g, &psi, 1.7).unwrap();
        let qubit = psi.transform(&u).unwrap();
        let d: f64 = walk
            .amplitudes()
            .iter()
            .zip(qubit.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(d < 1e-12, "{d}");
    }
}

#[test]
fn gray_line_encoding_matches_closed_form() {
    let deltas = [0.9, 1.1, 0.7, 1.3, 0.5, 1.0, 0.8];
    let eps = [0.1, -0.2, 0.3, 0.0, -0.1, 0.2, 0.4, -0.3];
    let g = build_line(8, &deltas, &eps).unwrap();
    let via_graph = encode(&g, &EncodingSpec::binary()).unwrap().to_matrix().unwrap();
    let closed = line_qubit_hamiltonian(3, &deltas, &eps).unwrap().to_matrix().unwrap();
    let d = (via_graph - &closed).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(d < 1e-12, "{d}");
    // neighbours on the line sit one bit apart
    let gray = |x: usize| x ^ (x >> 1);
    for x in 0..7 {
        assert!((closed[(gray(x), gray(x + 1))].re + deltas[x]).abs() < 1e-12);
        assert!((closed[(gray(x), gray(x))].re - eps[x]).abs() < 1e-12);
    }
}

#[test]
fn square_lattice_band() {
    let lat = Hyperlattice::new(2, 6, 0.9, Boundary::Periodic).unwrap();
    let got = build_hyperlattice_graph(&lat).unwrap().spectrum();
    let mut want = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            let p = [TAU * a as f64 / 6.0, TAU * b as f64 / 6.0];
            want.push(-band_energy(&lat, &p).unwrap());
        }
    }
    want.sort_by(f64::total_cmp);
    assert!(max_diff(&got, &want) < 1e-10);
}

#[test]
fn exact_propagator_is_unitary_for_random_walks() {
    let g = WalkGraph::from_edges(5, &[(0, 1, 0.3), (1, 2, -1.2), (2, 4, 0.8), (0, 4, 0.5), (1, 3, 2.0)]).unwrap();
    let h = g.walk_matrix().map(|x| Complex64::new(x, 0.0));
    let u = exact_propagator(&h, 2.3).unwrap();
    let eye = CMatrix::identity(5, 5);
    let d = (u.adjoint() * &u - eye).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(d < 1e-13);
}
