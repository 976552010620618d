//! Fundamental circuits as pulse schedules of the dynamic Hamiltonian
//! `H = Σ ε_j Z_j − Σ Δ_j X_j − Σ V⊥_ij X_iX_j`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::circuit::{matrices, Circuit, Gate};
use crate::gatelib::{FundamentalPulse, PulseTerm};
use crate::par::{map_range, Exec};
use crate::{check_capacity, fmt_f64, CMatrix, Error, Result};

use super::exact_propagator;

/// Term strengths available on the device.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseStrengths {
    pub eps: Vec<f64>,
    pub delta: Vec<f64>,
    /// Symmetric; only entries with `i ≠ j` are read.
    pub vperp: Vec<Vec<f64>>,
}

impl PulseStrengths {
    pub fn uniform(n_qubits: usize, eps: f64, delta: f64, vperp: f64) -> Self {
        PulseStrengths {
            eps: vec![eps; n_qubits],
            delta: vec![delta; n_qubits],
            vperp: vec![vec![vperp; n_qubits]; n_qubits],
        }
    }

    fn get(&self, term: PulseTerm) -> Result<f64> {
        let v = match term {
            PulseTerm::Eps(j) => self.eps.get(j).copied(),
            PulseTerm::Delta(j) => self.delta.get(j).copied(),
            PulseTerm::Vperp(i, j) => self.vperp.get(i).and_then(|r| r.get(j)).copied(),
        };
        match v {
            Some(s) if s != 0.0 && s.is_finite() => Ok(s),
            _ => Err(Error::InvalidArgument(format!(
                "no usable strength for {}",
                term_name(term)
            ))),
        }
    }
}

fn term_name(t: PulseTerm) -> String {
    match t {
        PulseTerm::Eps(j) => format!("eps on q{}", j + 1),
        PulseTerm::Delta(j) => format!("delta on q{}", j + 1),
        PulseTerm::Vperp(i, j) => format!("vperp on q{} q{}", i + 1, j + 1),
    }
}

/// Pulses in execution order on an `n_qubits` register.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PulseSchedule {
    pub n_qubits: usize,
    pub pulses: Vec<FundamentalPulse>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct Row {
    term: String,
    qubits: String,
    strength: String,
    duration: String,
}

impl PulseSchedule {
    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    pub fn total_time(&self) -> f64 {
        self.pulses.iter().map(|p| p.duration).sum()
    }

    /// `term,qubits,strength,duration` rows; qubits are 1-based and space
    /// separated.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for p in &self.pulses {
            let (term, qubits) = match p.term {
                PulseTerm::Eps(j) => ("eps", format!("{}", j + 1)),
                PulseTerm::Delta(j) => ("delta", format!("{}", j + 1)),
                PulseTerm::Vperp(i, j) => ("vperp", format!("{} {}", i + 1, j + 1)),
            };
            w.serialize(Row {
                term: term.into(),
                qubits,
                strength: fmt_f64(p.strength),
                duration: fmt_f64(p.duration),
            })?;
        }
        if self.pulses.is_empty() {
            w.write_record(["term", "qubits", "strength", "duration"])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn from_csv(text: &str, n_qubits: usize) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut pulses = Vec::new();
        for (k, row) in r.deserialize::<Row>().enumerate() {
            let row = row?;
            let line = k + 2;
            let qs = row
                .qubits
                .split_whitespace()
                .map(|s| match s.parse::<usize>() {
                    Ok(q) if q >= 1 && q <= n_qubits => Ok(q - 1),
                    _ => Err(Error::parse(line, format!("bad qubit {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let term = match (row.term.as_str(), qs.as_slice()) {
                ("eps", &[j]) => PulseTerm::Eps(j),
                ("delta", &[j]) => PulseTerm::Delta(j),
                ("vperp", &[i, j]) if i != j => PulseTerm::Vperp(i, j),
                _ => {
                    return Err(Error::parse(
                        line,
                        format!("bad term {:?} on {:?}", row.term, row.qubits),
                    ))
                }
            };
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(line, format!("bad number {s:?}")))
            };
            pulses.push(FundamentalPulse {
                term,
                strength: num(&row.strength)?,
                duration: num(&row.duration)?,
            });
        }
        Ok(PulseSchedule { n_qubits, pulses })
    }
}

/// Reads each gate angle as a pulse time on its term:
/// `RZ(θ)`: `εT ≡ θ/2`, `RX(γ)`: `ΔT ≡ −γ/2`, `XX(χ)`: `V⊥T ≡ χ`, all
/// modulo `π`, so every duration is taken in `[0, π/|strength|)`. A shift
/// by `π` only flips the sign of the whole unitary. Zero-length pulses are
/// dropped.
pub fn circuit_to_pulses(c: &Circuit, strengths: &PulseStrengths) -> Result<PulseSchedule> {
    let mut pulses = Vec::new();
    for g in c.gates() {
        let (term, phase) = match *g {
            Gate::Rz { q, theta } => (PulseTerm::Eps(q), theta / 2.0),
            Gate::Rx { q, theta } => (PulseTerm::Delta(q), -theta / 2.0),
            Gate::Xx { a, b, chi } => (PulseTerm::Vperp(a, b), chi),
            _ => return Err(Error::UnsupportedGate(format!("{g} is not RX, RZ or XX"))),
        };
        let strength = strengths.get(term)?;
        let duration = (phase / strength).rem_euclid(PI / strength.abs());
        if duration > 0.0 {
            pulses.push(FundamentalPulse {
                term,
                strength,
                duration,
            });
        }
    }
    Ok(PulseSchedule {
        n_qubits: c.total_qubits(),
        pulses,
    })
}

fn pulse_generator(p: &FundamentalPulse) -> (CMatrix, Vec<usize>) {
    let s = Complex64::new(p.strength, 0.0);
    match p.term {
        PulseTerm::Eps(j) => (matrices::z() * s, vec![j]),
        PulseTerm::Delta(j) => (matrices::x() * -s, vec![j]),
        PulseTerm::Vperp(i, j) => (matrices::x().kronecker(&matrices::x()) * -s, vec![i, j]),
    }
}

/// Product of `exp(−i H_k T_k)` over the pulses, each segment evaluated by
/// the eigendecomposition propagator.
pub fn replay(p: &PulseSchedule) -> Result<CMatrix> {
    replay_with(p, Exec::default())
}

pub fn replay_with(p: &PulseSchedule, exec: Exec) -> Result<CMatrix> {
    let n = p.n_qubits;
    check_capacity(n)?;
    let dim = 1usize << n;
    let segments = p
        .pulses
        .iter()
        .map(|pulse| {
            let (h, qs) = pulse_generator(pulse);
            if qs.iter().any(|&q| q >= n) {
                return Err(Error::InvalidArgument(format!(
                    "{} outside the register",
                    term_name(pulse.term)
                )));
            }
            Ok((exact_propagator(&h, pulse.duration)?, qs))
        })
        .collect::<Result<Vec<_>>>()?;
    let columns = map_range(exec.for_len(dim, 2), dim, |col| {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[col] = Complex64::new(1.0, 0.0);
        for (u, qs) in &segments {
            v = apply_local(&v, u, qs, n);
        }
        v
    });
    let mut out = CMatrix::zeros(dim, dim);
    for (c, col) in columns.into_iter().enumerate() {
        out.column_mut(c).copy_from_slice(&col);
    }
    Ok(out)
}

fn apply_local(v: &[Complex64], u: &CMatrix, qs: &[usize], n: usize) -> Vec<Complex64> {
    let bits: Vec<usize> = qs.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let mask = bits.iter().fold(0, |a, b| a | b);
    let k = bits.len();
    let spread = |local: usize| {
        bits.iter()
            .enumerate()
            .filter(|(b, _)| local >> (k - 1 - b) & 1 == 1)
            .fold(0, |a, (_, &m)| a | m)
    };
    (0..v.len())
        .map(|i| {
            let r = bits
                .iter()
                .enumerate()
                .filter(|(_, &m)| i & m != 0)
                .fold(0, |a, (b, _)| a | 1 << (k - 1 - b));
            let base = i & !mask;
            (0..u.ncols()).map(|c| u[(r, c)] * v[base | spread(c)]).sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gatelib::decompose_cnot;
    use crate::sim::phase_aligned_distance;

    fn replay_distance(c: &Circuit) -> f64 {
        let p = circuit_to_pulses(c, &PulseStrengths::uniform(c.total_qubits(), 0.8, 1.3, 0.6)).unwrap();
        assert!(p.pulses.iter().all(|x| x.duration > 0.0));
        phase_aligned_distance(&replay(&p).unwrap(), &c.unitary().unwrap(), Exec::default())
            .unwrap()
            .0
    }

    #[test]
    fn rx_pi_single_pulse() {
        let mut c = Circuit::new(1, 0);
        c.push(Gate::Rx { q: 0, theta: PI }).unwrap();
        let p = circuit_to_pulses(&c, &PulseStrengths::uniform(1, 1.0, 1.0, 1.0)).unwrap();
        assert_eq!(p.len(), 1);
        assert!((p.pulses[0].duration - PI / 2.0).abs() < 1e-15);
        assert!(replay_distance(&c) < 1e-12);
    }

    #[test]
    fn empty_circuit() {
        let p = circuit_to_pulses(&Circuit::new(2, 0), &PulseStrengths::uniform(2, 1.0, 1.0, 1.0)).unwrap();
        assert!(p.is_empty());
        let back = PulseSchedule::from_csv(&p.to_csv().unwrap(), 2).unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn cnot_replay() {
        assert!(replay_distance(&decompose_cnot()) < 1e-9);
    }

    #[test]
    fn negative_angles_and_far_pairs() {
        let mut c = Circuit::new(3, 0);
        for g in [
            Gate::Rz { q: 2, theta: -0.4 },
            Gate::Xx { a: 0, b: 2, chi: -1.1 },
            Gate::Rx { q: 1, theta: 5.0 },
            Gate::Xx { a: 2, b: 1, chi: 0.3 },
        ] {
            c.push(g).unwrap();
        }
        assert!(replay_distance(&c) < 1e-12);
    }

    #[test]
    fn csv_round_trip() {
        let p = circuit_to_pulses(&decompose_cnot(), &PulseStrengths::uniform(2, 0.8, 1.3, 0.6)).unwrap();
        let text = p.to_csv().unwrap();
        assert!(text.starts_with("term,qubits,strength,duration\n"));
        assert_eq!(PulseSchedule::from_csv(&text, 2).unwrap(), p);
    }

    #[test]
    fn rejects_non_fundamental_and_zero_strength() {
        let mut c = Circuit::new(1, 0);
        c.push(Gate::H { q: 0 }).unwrap();
        assert!(circuit_to_pulses(&c, &PulseStrengths::uniform(1, 1.0, 1.0, 1.0)).is_err());
        let mut c = Circuit::new(1, 0);
        c.push(Gate::Rz { q: 0, theta: 1.0 }).unwrap();
        assert!(circuit_to_pulses(&c, &PulseStrengths::uniform(1, 0.0, 1.0, 1.0)).is_err());
    }
}
