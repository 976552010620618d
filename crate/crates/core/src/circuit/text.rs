//! Line-oriented circuit format.
//!
//! ```text
//! QUBITS 3
//! ANCILLAS 1
//! RX q1 1.5707963267948966e0
//! CNOT q1 q2
//! MCX +q1 -q2 +q3 q4
//! XX q2 q3 7.8539816339744828e-1
//! ```
//!
//! Qubits are 1-indexed over the whole register; ancillas follow the data
//! qubits. `+`/`-` mark controls on `↑`/`↓`. Headers may be omitted, in
//! which case every referenced qubit is a data qubit.

use super::{Circuit, Gate, TargetOp};
use crate::bits::Control;
use crate::{fmt_f64, Error, Result};

fn q(i: usize) -> String {
    format!("q{}", i + 1)
}

fn ctl(c: &Control) -> String {
    format!("{}q{}", if c.up { '+' } else { '-' }, c.qubit + 1)
}

pub(super) fn gate_line(g: &Gate) -> String {
    match g {
        Gate::Rx { q: a, theta } => format!("RX {} {}", q(*a), fmt_f64(*theta)),
        Gate::Ry { q: a, theta } => format!("RY {} {}", q(*a), fmt_f64(*theta)),
        Gate::Rz { q: a, theta } => format!("RZ {} {}", q(*a), fmt_f64(*theta)),
        Gate::H { q: a } => format!("H {}", q(*a)),
        Gate::X { q: a } => format!("X {}", q(*a)),
        Gate::APhase { q: a, eps } => format!("APHASE {} {}", q(*a), fmt_f64(*eps)),
        Gate::Cnot { control, target } => format!("CNOT {} {}", q(*control), q(*target)),
        Gate::Crx { control, target, theta } => {
            format!("CRX {} {} {}", q(*control), q(*target), fmt_f64(*theta))
        }
        Gate::Crk { control, target, k } => format!("CRK {} {} {k}", q(*control), q(*target)),
        Gate::Cphase { control, target, phi } => {
            format!("CPHASE {} {} {}", q(*control), q(*target), fmt_f64(*phi))
        }
        Gate::Swap { a, b } => format!("SWAP {} {}", q(*a), q(*b)),
        Gate::Xx { a, b, chi } => format!("XX {} {} {}", q(*a), q(*b), fmt_f64(*chi)),
        Gate::Toffoli { c1, c2, target } => {
            format!("TOFFOLI {} {} {}", q(*c1), q(*c2), q(*target))
        }
        Gate::Mc { controls, target, op } => {
            let name = match op {
                TargetOp::X => "MCX",
                TargetOp::Rx(_) => "MCRX",
                TargetOp::Rz(_) => "MCRZ",
                TargetOp::APhase(_) => "MCAPHASE",
            };
            let mut parts = vec![name.to_string()];
            parts.extend(controls.iter().map(ctl));
            parts.push(q(*target));
            if let Some(a) = op.angle() {
                parts.push(fmt_f64(a));
            }
            parts.join(" ")
        }
    }
}

fn parse_qubit(tok: &str) -> std::result::Result<usize, String> {
    let n: usize = tok
        .strip_prefix('q')
        .ok_or_else(|| format!("expected qubit like q1, got {tok:?}"))?
        .parse()
        .map_err(|_| format!("bad qubit {tok:?}"))?;
    if n == 0 {
        return Err("qubits are 1-indexed".into());
    }
    Ok(n - 1)
}

fn parse_control(tok: &str) -> std::result::Result<Control, String> {
    let (up, rest) = if let Some(r) = tok.strip_prefix('+') {
        (true, r)
    } else if let Some(r) = tok.strip_prefix('-') {
        (false, r)
    } else {
        return Err(format!("control {tok:?} needs a + or - polarity"));
    };
    Ok(Control {
        qubit: parse_qubit(rest)?,
        up,
    })
}

fn parse_angle(tok: &str) -> std::result::Result<f64, String> {
    let v: f64 = tok.parse().map_err(|_| format!("bad angle {tok:?}"))?;
    if !v.is_finite() {
        return Err(format!("angle {tok:?} is not finite"));
    }
    Ok(v)
}

pub(super) fn parse_gate(line: &str) -> std::result::Result<Gate, String> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let (name, args) = toks.split_first().ok_or("empty gate line")?;
    let name = name.to_ascii_uppercase();
    let want = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!("{name} takes {n} arguments, got {}", args.len()))
        }
    };
    let g = match name.as_str() {
        "RX" | "RY" | "RZ" | "APHASE" => {
            want(2)?;
            let a = parse_qubit(args[0])?;
            let t = parse_angle(args[1])?;
            match name.as_str() {
                "RX" => Gate::Rx { q: a, theta: t },
                "RY" => Gate::Ry { q: a, theta: t },
                "RZ" => Gate::Rz { q: a, theta: t },
                _ => Gate::APhase { q: a, eps: t },
            }
        }
        "H" | "X" => {
            want(1)?;
            let a = parse_qubit(args[0])?;
            if name == "H" {
                Gate::H { q: a }
            } else {
                Gate::X { q: a }
            }
        }
        "CNOT" | "SWAP" => {
            want(2)?;
            let (a, b) = (parse_qubit(args[0])?, parse_qubit(args[1])?);
            if name == "CNOT" {
                Gate::Cnot { control: a, target: b }
            } else {
                Gate::Swap { a, b }
            }
        }
        "CRX" | "CPHASE" | "XX" => {
            want(3)?;
            let (a, b) = (parse_qubit(args[0])?, parse_qubit(args[1])?);
            let t = parse_angle(args[2])?;
            match name.as_str() {
                "CRX" => Gate::Crx {
                    control: a,
                    target: b,
                    theta: t,
                },
                "CPHASE" => Gate::Cphase {
                    control: a,
                    target: b,
                    phi: t,
                },
                _ => Gate::Xx { a, b, chi: t },
            }
        }
        "CRK" => {
            want(3)?;
            let k: u32 = args[2].parse().map_err(|_| format!("bad k {:?}", args[2]))?;
            Gate::Crk {
                control: parse_qubit(args[0])?,
                target: parse_qubit(args[1])?,
                k,
            }
        }
        "TOFFOLI" => {
            want(3)?;
            Gate::Toffoli {
                c1: parse_qubit(args[0])?,
                c2: parse_qubit(args[1])?,
                target: parse_qubit(args[2])?,
            }
        }
        "MCX" | "MCRX" | "MCRZ" | "MCAPHASE" => {
            let angled = name != "MCX";
            let (rest, op) = if angled {
                let (last, rest) = args.split_last().ok_or("missing angle")?;
                let t = parse_angle(last)?;
                let op = match name.as_str() {
                    "MCRX" => TargetOp::Rx(t),
                    "MCRZ" => TargetOp::Rz(t),
                    _ => TargetOp::APhase(t),
                };
                (rest, op)
            } else {
                (args, TargetOp::X)
            };
            let (target, ctls) = rest.split_last().ok_or("missing target")?;
            if ctls.is_empty() {
                return Err(format!("{name} needs at least one control"));
            }
            Gate::Mc {
                controls: ctls
                    .iter()
                    .map(|t| parse_control(t))
                    .collect::<std::result::Result<_, _>>()?,
                target: parse_qubit(target)?,
                op,
            }
        }
        other => return Err(format!("unknown gate {other:?}")),
    };
    Ok(g)
}

impl Circuit {
    pub fn to_text(&self) -> String {
        let mut out = format!("QUBITS {}\nANCILLAS {}\n", self.n_qubits, self.n_ancillas);
        for g in &self.gates {
            out.push_str(&gate_line(g));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut n_qubits: Option<usize> = None;
        let mut n_ancillas: Option<usize> = None;
        let mut gates = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap_or("").to_ascii_uppercase();
            if head == "QUBITS" || head == "ANCILLAS" {
                let v: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, format!("bad {head} header")))?;
                if toks.next().is_some() || !gates.is_empty() {
                    return Err(Error::parse(line_no, format!("misplaced {head} header")));
                }
                let slot = if head == "QUBITS" {
                    &mut n_qubits
                } else {
                    &mut n_ancillas
                };
                if slot.replace(v).is_some() {
                    return Err(Error::parse(line_no, format!("duplicate {head} header")));
                }
                continue;
            }
            let g = parse_gate(line).map_err(|m| Error::parse(line_no, m))?;
            gates.push((line_no, g));
        }
        let used = gates
            .iter()
            .flat_map(|(_, g)| g.qubits())
            .map(|q| q + 1)
            .max()
            .unwrap_or(0);
        let a = n_ancillas.unwrap_or(0);
        let n = n_qubits.unwrap_or_else(|| used.saturating_sub(a));
        let mut c = Circuit::new(n, a);
        for (line_no, g) in gates {
            c.push(g).map_err(|e| Error::parse(line_no, e.to_string()))?;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        let mut c = Circuit::new(4, 2);
        let gates = vec![
            Gate::Rx {
                q: 0,
                theta: std::f64::consts::FRAC_PI_2,
            },
            Gate::Ry { q: 1, theta: -0.1 },
            Gate::Rz { q: 2, theta: 1.0 / 3.0 },
            Gate::H { q: 3 },
            Gate::X { q: 4 },
            Gate::APhase { q: 5, eps: 0.1 + 0.2 },
            Gate::Cnot { control: 0, target: 1 },
            Gate::Crx {
                control: 1,
                target: 2,
                theta: 2.5e-300,
            },
            Gate::Crk {
                control: 2,
                target: 3,
                k: 6,
            },
            Gate::Cphase {
                control: 3,
                target: 0,
                phi: -7.25,
            },
            Gate::Swap { a: 0, b: 5 },
            Gate::Xx {
                a: 1,
                b: 2,
                chi: std::f64::consts::FRAC_PI_4,
            },
            Gate::Toffoli {
                c1: 0,
                c2: 1,
                target: 4,
            },
            Gate::Mc {
                controls: vec![Control::up(0), Control::down(1), Control::up(2)],
                target: 3,
                op: TargetOp::X,
            },
            Gate::Mc {
                controls: vec![Control::down(4)],
                target: 5,
                op: TargetOp::Rx(1e-17),
            },
            Gate::Mc {
                controls: vec![Control::up(4)],
                target: 0,
                op: TargetOp::Rz(-0.0),
            },
            Gate::Mc {
                controls: vec![Control::up(4), Control::up(3)],
                target: 0,
                op: TargetOp::APhase(123.456),
            },
        ];
        for g in gates {
            c.push(g).unwrap();
        }
        c
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let c = sample();
        let text = c.to_text();
        let back = Circuit::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn documented_lines_parse() {
        let c = Circuit::from_text("RX q1 1.5707963\nCNOT q1 q2\nMCX +q1 -q2 +q3 q4\nXX q2 q3 0.7853981\n").unwrap();
        assert_eq!(c.n_qubits(), 4);
        assert_eq!(c.len(), 4);
        assert_eq!(
            c.gates()[2],
            Gate::Mc {
                controls: vec![Control::up(0), Control::down(1), Control::up(2)],
                target: 3,
                op: TargetOp::X
            }
        );
    }

    #[test]
    fn malformed_lines_rejected() {
        for bad in [
            "RX q1",
            "RX q0 1.0",
            "CNOT q1 q1",
            "FOO q1",
            "MCX q1 q2",
            "MCX q2",
            "RZ q1 nan",
            "QUBITS 1\nX q2",
            "X q1\nQUBITS 1",
        ] {
            assert!(Circuit::from_text(bad).is_err(), "{bad}");
        }
    }
}
