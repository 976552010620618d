//! Text and JSON forms of a [`PauliHamiltonian`].
//!
//! Text: a `qubits M` header, then one term per line, `coeff * X1 Z3 Y4`
//! with 1-indexed qubits and identity letters omitted (`coeff * I` for the
//! identity). Complex coefficients are written `(re,im)`. `#` starts a
//! comment.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use super::{Pauli, PauliHamiltonian, PauliString};
use crate::{fmt_f64, Error, Result};

fn ops_text(s: &PauliString) -> String {
    let parts: Vec<String> = s
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != Pauli::I)
        .map(|(q, p)| format!("{}{}", p.symbol(), q + 1))
        .collect();
    if parts.is_empty() {
        "I".to_string()
    } else {
        parts.join(" ")
    }
}

fn parse_ops(m: usize, text: &str) -> std::result::Result<PauliString, String> {
    let mut ops = Vec::new();
    let mut seen = vec![false; m];
    for tok in text.split_whitespace() {
        if tok == "I" {
            continue;
        }
        let mut chars = tok.chars();
        let p = match chars.next() {
            Some('X') => Pauli::X,
            Some('Y') => Pauli::Y,
            Some('Z') => Pauli::Z,
            _ => return Err(format!("bad Pauli factor {tok:?}")),
        };
        let q: usize = chars
            .as_str()
            .parse()
            .map_err(|_| format!("bad qubit index in {tok:?}"))?;
        if q == 0 || q > m {
            return Err(format!("qubit {q} out of range 1..={m}"));
        }
        if seen[q - 1] {
            return Err(format!("qubit {q} repeated"));
        }
        seen[q - 1] = true;
        ops.push((q - 1, p));
    }
    PauliString::from_sparse(m, &ops).map_err(|e| e.to_string())
}

fn parse_coeff(text: &str) -> std::result::Result<Complex64, String> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| format!("bad complex coefficient {t:?}"))?;
        let re: f64 = re.trim().parse().map_err(|_| format!("bad number {re:?}"))?;
        let im: f64 = im.trim().parse().map_err(|_| format!("bad number {im:?}"))?;
        return Ok(Complex64::new(re, im));
    }
    t.parse::<f64>()
        .map(|re| Complex64::new(re, 0.0))
        .map_err(|_| format!("bad coefficient {t:?}"))
}

fn coeff_text(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_f64(c.re)
    } else {
        format!("({},{})", fmt_f64(c.re), fmt_f64(c.im))
    }
}

impl PauliHamiltonian {
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for (c, s) in self.terms() {
            let _ = writeln!(out, "{} * {}", coeff_text(c), ops_text(&s));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut h: Option<PauliHamiltonian> = None;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("qubits") {
                if h.is_some() {
                    return Err(Error::parse(line_no, "duplicate qubits header"));
                }
                let m: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, "bad qubit count"))?;
                if m == 0 {
                    return Err(Error::parse(line_no, "qubit count must be positive"));
                }
                h = Some(PauliHamiltonian::new(m));
                continue;
            }
            let ham = h
                .as_mut()
                .ok_or_else(|| Error::parse(line_no, "missing `qubits M` header"))?;
            let (c, ops) = line
                .split_once('*')
                .ok_or_else(|| Error::parse(line_no, "expected `coeff * ops`"))?;
            let c = parse_coeff(c).map_err(|m| Error::parse(line_no, m))?;
            let s = parse_ops(ham.n_qubits, ops).map_err(|m| Error::parse(line_no, m))?;
            ham.add_term(c, s);
        }
        h.ok_or_else(|| Error::parse(0, "empty input"))
    }
}

/// JSON form: `{"n_qubits": M, "terms": [{"coeff": [re, im], "ops": "X1 Z3"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PauliJson {
    pub n_qubits: usize,
    pub terms: Vec<PauliTermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PauliTermJson {
    pub coeff: [f64; 2],
    pub ops: String,
}

impl From<&PauliHamiltonian> for PauliJson {
    fn from(h: &PauliHamiltonian) -> Self {
        PauliJson {
            n_qubits: h.n_qubits,
            terms: h
                .terms()
                .map(|(c, s)| PauliTermJson {
                    coeff: [c.re, c.im],
                    ops: ops_text(&s),
                })
                .collect(),
        }
    }
}

impl TryFrom<PauliJson> for PauliHamiltonian {
    type Error = Error;

    fn try_from(j: PauliJson) -> Result<Self> {
        if j.n_qubits == 0 {
            return Err(Error::InvalidArgument("n_qubits must be positive".into()));
        }
        let mut h = PauliHamiltonian::new(j.n_qubits);
        for (k, t) in j.terms.iter().enumerate() {
            let s = parse_ops(j.n_qubits, &t.ops).map_err(|m| Error::parse(k + 1, m))?;
            h.add_term(Complex64::new(t.coeff[0], t.coeff[1]), s);
        }
        Ok(h)
    }
}

impl PauliHamiltonian {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&PauliJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PauliJson = serde_json::from_str(text)?;
        j.try_into()
    }
}
