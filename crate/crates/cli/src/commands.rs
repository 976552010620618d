use std::error::Error as StdError;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use walkforge::circuit::Circuit;
use walkforge::decode::{matrix_to_walk, static_to_walk, StaticQubitHamiltonian};
use walkforge::encode::{encode, EncodingSpec};
use walkforge::gatelib::{lower_to_fundamental, lower_to_two_qubit};
use walkforge::pauli::PauliHamiltonian;
use walkforge::sim::{evolve_walk, phase_aligned_distance, StateVector};
use walkforge::spinchain::{column_projection, excitation_graph, jordan_wigner_walk, sector_states, XYChain};
use walkforge::synth::{
    build_qft_circuit, circuit_to_pulses, exact_propagator, qft_reference, replay, synth_line_walk_step, trotterize,
    PulseSchedule, PulseStrengths, QftLevel, TrotterPlan,
};
use walkforge::walkgraph::{
    build_cycle, build_hypercube, build_hyperlattice_graph, build_line, Boundary, Hyperlattice, WalkGraph,
};
use walkforge::{fmt_f64, BitString, Exec};

use crate::*;

type Res<T> = Result<T, Box<dyn StdError>>;

fn usage(msg: impl Into<String>) -> Box<dyn StdError> {
    msg.into().into()
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Res<()> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Res<T> {
    v.ok_or_else(|| usage(format!("{flag} is required here")))
}

fn parse_list(s: &str) -> Res<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| usage(format!("bad number {x:?}"))))
        .collect()
}

pub fn run(cmd: Command) -> Res<ExitCode> {
    match cmd {
        Command::Graph {
            action: GraphCmd::Build(a),
        } => graph_build(&a)?,
        Command::Encode(a) => encode_cmd(&a)?,
        Command::Decode(a) => decode_cmd(&a)?,
        Command::Chain { model: ChainCmd::Xy(a) } => chain_xy(&a)?,
        Command::Synth { what } => synth(&what)?,
        Command::Verify(a) => return verify(&a),
        Command::Simulate(a) => simulate(&a)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn graph_build(a: &BuildArgs) -> Res<()> {
    let g = match a.kind {
        Kind::Line => {
            let n = need(a.n, "--n")?;
            build_line(n, &vec![a.delta; n.saturating_sub(1)], &vec![a.eps; n])?
        }
        Kind::Cycle => build_cycle(need(a.n, "--n")?, a.delta)?,
        Kind::Hypercube => build_hypercube(need(a.m, "--m")?, a.delta)?,
        Kind::Hyperlattice => {
            let boundary = match a.boundary {
                BoundaryArg::Open => Boundary::Open,
                BoundaryArg::Periodic => Boundary::Periodic,
            };
            let h = Hyperlattice::new(need(a.dim, "--dim")?, need(a.side, "--side")?, a.delta, boundary)?;
            build_hyperlattice_graph(&h)?
        }
    };
    emit(a.output.as_ref(), &g.to_json()?)
}

fn encode_cmd(a: &EncodeArgs) -> Res<()> {
    let g = WalkGraph::from_json(&read(&a.graph)?)?;
    let spec = match (a.scheme, &a.labels) {
        (SchemeArg::Single, None) => EncodingSpec::single_excitation(),
        (SchemeArg::Single, Some(_)) => return Err(usage("--labels only applies to --scheme binary")),
        (SchemeArg::Binary, None) => EncodingSpec::binary(),
        (SchemeArg::Binary, Some(l)) => {
            let labels = l
                .split(',')
                .map(str::parse)
                .collect::<walkforge::Result<Vec<BitString>>>()?;
            EncodingSpec::with_labels(labels)
        }
    };
    let h = encode(&g, &spec)?;
    let text = match a.format {
        PauliFormat::Text => h.to_text(),
        PauliFormat::Json => h.to_json()?,
    };
    emit(a.output.as_ref(), &text)
}

fn decode_cmd(a: &DecodeArgs) -> Res<()> {
    let g = match (&a.static_params, &a.pauli) {
        (Some(p), _) => static_to_walk(&StaticQubitHamiltonian::from_json(&read(p)?)?)?,
        (None, Some(p)) => matrix_to_walk(&PauliHamiltonian::from_text(&read(p)?)?)?,
        (None, None) => return Err(usage("give a Pauli file or --static")),
    };
    emit(a.output.as_ref(), &g.to_json()?)
}

fn chain_xy(a: &XyArgs) -> Res<()> {
    let chain = match &a.couplings {
        Some(c) => {
            let c = parse_list(c)?;
            if c.len() + 1 != a.n {
                return Err(usage(format!(
                    "{} sites need {} couplings, got {}",
                    a.n,
                    a.n.saturating_sub(1),
                    c.len()
                )));
            }
            XYChain::with_couplings(c, a.h)?
        }
        None => XYChain::uniform(a.n, a.j, a.h)?,
    };
    let g = match a.sector {
        Some(k) => excitation_graph(&chain, k)?,
        None => {
            let jw = jordan_wigner_walk(&chain)?;
            eprintln!("offset {}", fmt_f64(jw.offset));
            jw.graph
        }
    };
    if a.collapse {
        let start = match (&a.start, a.sector) {
            (Some(s), _) => {
                let label: BitString = s.parse()?;
                let labels = g.labels().ok_or_else(|| usage("--start needs a labelled graph"))?;
                labels
                    .iter()
                    .position(|l| *l == label)
                    .ok_or_else(|| usage(format!("{s} is not a node of this graph")))?
            }
            (None, Some(k)) => {
                let idx = ((1usize << k) - 1) << (a.n - k);
                sector_states(a.n, k)
                    .iter()
                    .position(|&s| s == idx)
                    .expect("start lies in its sector")
            }
            (None, None) => 0,
        };
        let p = column_projection(&g, start)?;
        let sizes: Vec<String> = p.columns.iter().map(|c| c.len().to_string()).collect();
        eprintln!("columns {}", p.columns.len());
        eprintln!("sizes {}", sizes.join(" "));
        for (k, c) in p.couplings.iter().enumerate() {
            eprintln!("coupling {} {}", k + 1, fmt_f64(*c));
        }
        for (k, e) in p.onsite.iter().enumerate() {
            eprintln!("onsite {} {}", k + 1, fmt_f64(*e));
        }
        eprintln!("residual {}", fmt_f64(p.residual));
        eprintln!("closed {}", p.residual <= walkforge::spinchain::COLLAPSE_TOL);
    }
    emit(a.output.as_ref(), &g.to_json()?)
}

fn lower(c: Circuit, l: Lowering) -> Res<Circuit> {
    Ok(match l {
        Lowering::None => c,
        Lowering::TwoQubit => lower_to_two_qubit(&c)?,
        Lowering::Fundamental => lower_to_fundamental(&c)?,
    })
}

fn synth(cmd: &SynthCmd) -> Res<()> {
    let (c, out) = match cmd {
        SynthCmd::Trotter(a) => {
            let h = PauliHamiltonian::from_text(&read(&a.hamiltonian)?)?;
            let c = trotterize(&h, a.t, TrotterPlan::new(a.steps)?)?;
            (lower(c, a.lower)?, &a.out)
        }
        SynthCmd::LineStep(a) => {
            if a.repeat == 0 {
                return Err(usage("--repeat must be at least 1"));
            }
            let c = synth_line_walk_step(a.n, a.theta, a.cycle)?.repeat(a.repeat);
            (lower(c, a.lower)?, &a.out)
        }
        SynthCmd::Qft(a) => {
            let level = match a.level {
                LevelArg::Named => QftLevel::Named,
                LevelArg::Fundamental => QftLevel::Fundamental,
            };
            (build_qft_circuit(a.n, level)?, &a.out)
        }
    };
    if let Some(path) = &out.pulses {
        let n = c.total_qubits();
        let strengths = PulseStrengths::uniform(n, out.eps_strength, out.delta_strength, out.vperp_strength);
        let p = circuit_to_pulses(&c, &strengths)?;
        fs::write(path, p.to_csv()?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    emit(out.output.as_ref(), &c.to_text())
}

fn verify(a: &VerifyArgs) -> Res<ExitCode> {
    let c = Circuit::from_text(&read(&a.circuit)?)?;
    let exec = Exec::default();
    let (dev, phase, leak) = match a.against {
        Against::Exact => {
            let h = PauliHamiltonian::from_text(&read(&need(a.hamiltonian.clone(), "--hamiltonian")?)?)?;
            let t = need(a.t, "--t")?;
            if h.n_qubits() != c.n_qubits() {
                return Err(usage(format!(
                    "Hamiltonian has {} qubits, circuit has {} data qubits",
                    h.n_qubits(),
                    c.n_qubits()
                )));
            }
            let want = exact_propagator(&h.to_matrix()?, t)?;
            let (u, leak) = c.data_unitary(exec)?;
            let (d, phi) = phase_aligned_distance(&u, &want, exec)?;
            (d, phi, Some(leak))
        }
        Against::Oracle => {
            let want = match a.reference {
                Reference::Qft => {
                    if c.n_ancillas() != 0 {
                        let (u, leak) = c.data_unitary(exec)?;
                        let (d, phi) = phase_aligned_distance(&u, &qft_reference(c.n_qubits())?, exec)?;
                        return report(d, phi, Some(leak), a.tol);
                    }
                    qft_reference(c.n_qubits())?
                }
                Reference::Pulses => {
                    let p = need(a.pulses.as_ref(), "--pulses")?;
                    let s = PulseSchedule::from_csv(&read(p)?, c.total_qubits())?;
                    replay(&s)?
                }
            };
            let (d, phi) = phase_aligned_distance(&c.unitary_with(exec)?, &want, exec)?;
            (d, phi, None)
        }
    };
    report(dev, phase, leak, a.tol)
}

fn report(dev: f64, phase: f64, leak: Option<f64>, tol: f64) -> Res<ExitCode> {
    let dev = leak.map_or(dev, |l| dev.max(l));
    println!("deviation {}", fmt_f64(dev));
    println!("phase {}", fmt_f64(phase));
    if let Some(l) = leak {
        println!("leak {}", fmt_f64(l));
    }
    println!("tolerance {}", fmt_f64(tol));
    let ok = dev <= tol;
    println!("result {}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn initial_state(a: &SimulateArgs, dim: usize) -> Res<StateVector> {
    match (&a.state, a.start) {
        (Some(p), _) => Ok(StateVector::from_json(&read(p)?)?),
        (None, Some(k)) => Ok(StateVector::basis(dim, k)?),
        (None, None) => Err(usage("give --state or --start")),
    }
}

fn simulate(a: &SimulateArgs) -> Res<()> {
    let out = match (&a.graph, &a.circuit) {
        (Some(p), _) => {
            let g = WalkGraph::from_json(&read(p)?)?;
            let psi = initial_state(a, g.n_nodes())?;
            evolve_walk(&g, &psi, need(a.t, "--t")?)?
        }
        (None, Some(p)) => {
            let c = Circuit::from_text(&read(p)?)?;
            if a.t.is_some() {
                return Err(usage("--t applies to --graph only"));
            }
            let psi = initial_state(a, 1usize << c.n_qubits())?;
            simulate_circuit(&c, &psi)?
        }
        (None, None) => return Err(usage("give --graph or --circuit")),
    };
    emit(a.output.as_ref(), &out.to_json()?)
}

fn simulate_circuit(c: &Circuit, psi: &StateVector) -> Res<StateVector> {
    let (out, leak) = c.apply_data(psi, Exec::default())?;
    if leak > 1e-12 {
        eprintln!("warning: ancilla leak {}", fmt_f64(leak));
    }
    Ok(out)
}
