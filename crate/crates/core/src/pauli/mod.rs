//! Pauli-string algebra and dense realization of multi-qubit Hamiltonians.
//!
//! Projectors and ladder operators are built as Pauli combinations:
//! `ℙ↑ = (I + Z)/2`, `ℙ↓ = (I − Z)/2`, `τ^± = (X ± iY)/2`.

mod text;

use nalgebra::Matrix2;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

use crate::bits::{BitString, Control};
use crate::par::{self, Exec};
use crate::{check_capacity, CMatrix, Error, Result};

pub use text::PauliJson;

/// Coefficients below this magnitude are dropped when merging terms.
pub const MERGE_TOL: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `self · other = i^k · letter`, returned as `(k, letter)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
        }
    }

    /// 2×2 matrix in index order (`↓` = 0, `↑` = 1).
    pub fn matrix(self) -> Matrix2<Complex64> {
        let z = ZERO;
        let o = ONE;
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => Matrix2::new(o, z, z, o),
            Pauli::X => Matrix2::new(z, o, o, z),
            Pauli::Y => Matrix2::new(z, i, -i, z),
            Pauli::Z => Matrix2::new(-o, z, z, o),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `i^k`.
fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// A tensor product of Pauli letters with a phase from `{1, i, −1, −i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
    phase: u8,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString { letters, phase: 0 }
    }

    pub fn with_phase(letters: Vec<Pauli>, phase: u8) -> Self {
        PauliString {
            letters,
            phase: phase % 4,
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::new(vec![Pauli::I; m])
    }

    /// `m`-qubit string with the given letters placed on the listed qubits.
    pub fn from_sparse(m: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut letters = vec![Pauli::I; m];
        for &(q, p) in ops {
            if q >= m {
                return Err(Error::InvalidArgument(format!("qubit {q} out of range for {m} qubits")));
            }
            letters[q] = p;
        }
        Ok(Self::new(letters))
    }

    pub fn n_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    /// Phase as a power of `i`.
    pub fn phase_power(&self) -> u8 {
        self.phase
    }

    pub fn phase(&self) -> Complex64 {
        i_pow(self.phase)
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(q, _)| q)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Only `I` and `Z` letters.
    pub fn is_diagonal(&self) -> bool {
        self.letters.iter().all(|&p| matches!(p, Pauli::I | Pauli::Z))
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: other.n_qubits(),
            });
        }
        let mut phase = self.phase + other.phase;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (k, p) = a.mul(b);
                phase += k;
                p
            })
            .collect();
        Ok(PauliString::with_phase(letters, phase))
    }

    pub fn tensor(&self, other: &PauliString) -> PauliString {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PauliString::with_phase(letters, self.phase + other.phase)
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        PauliHamiltonian::from_string(ONE, self.clone()).to_matrix()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            1 => f.write_str("i")?,
            2 => f.write_str("-")?,
            3 => f.write_str("-i")?,
            _ => {}
        }
        for p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

/// Masks describing how a phase-free Pauli string acts on basis states.
#[derive(Clone, Copy, Debug)]
struct Action {
    flip: usize,
    sign_mask: usize,
    sign_count: u32,
    y_count: u32,
}

impl Action {
    fn of(letters: &[Pauli]) -> Self {
        let m = letters.len();
        let mut a = Action {
            flip: 0,
            sign_mask: 0,
            sign_count: 0,
            y_count: 0,
        };
        for (q, &p) in letters.iter().enumerate() {
            let bit = 1usize << (m - 1 - q);
            match p {
                Pauli::I => {}
                Pauli::X => a.flip |= bit,
                Pauli::Y => {
                    a.flip |= bit;
                    a.sign_mask |= bit;
                    a.sign_count += 1;
                    a.y_count += 1;
                }
                Pauli::Z => {
                    a.sign_mask |= bit;
                    a.sign_count += 1;
                }
            }
        }
        a
    }

    /// `P|b⟩ = amp · |row⟩`. Each `Z` or `Y` letter contributes `−1` on a
    /// `↓` input bit; each `Y` additionally contributes `i`.
    fn apply(&self, b: usize) -> (usize, Complex64) {
        let downs = self.sign_count - (b & self.sign_mask).count_ones();
        let mut amp = i_pow((self.y_count % 4) as u8);
        if downs % 2 == 1 {
            amp = -amp;
        }
        (b ^ self.flip, amp)
    }
}

/// A weighted sum of Pauli strings on `n_qubits` qubits, kept merged.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliHamiltonian {
    n_qubits: usize,
    terms: BTreeMap<Vec<Pauli>, Complex64>,
}

impl PauliHamiltonian {
    /// The zero operator.
    pub fn new(n_qubits: usize) -> Self {
        PauliHamiltonian {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize, coeff: f64) -> Self {
        Self::from_string(Complex64::new(coeff, 0.0), PauliString::identity(n_qubits))
    }

    pub fn from_string(coeff: Complex64, s: PauliString) -> Self {
        let mut h = Self::new(s.n_qubits());
        h.add_term(coeff, s);
        h
    }

    /// Single letter `p` on qubit `q` of an `m`-qubit register.
    pub fn single(m: usize, q: usize, p: Pauli, coeff: f64) -> Self {
        let s = PauliString::from_sparse(m, &[(q, p)]).expect("qubit in range");
        Self::from_string(Complex64::new(coeff, 0.0), s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · s`, folding the string's phase into the coefficient.
    pub fn add_term(&mut self, coeff: Complex64, s: PauliString) {
        assert_eq!(s.n_qubits(), self.n_qubits, "register size mismatch");
        let c = coeff * s.phase();
        let entry = self.terms.entry(s.letters.clone()).or_insert(ZERO);
        *entry += c;
        if entry.norm() < MERGE_TOL {
            self.terms.remove(&s.letters);
        }
    }

    pub fn add_real(&mut self, coeff: f64, s: PauliString) {
        self.add_term(Complex64::new(coeff, 0.0), s);
    }

    /// Terms in canonical order (identity first, then lexicographic in
    /// `I < X < Y < Z`), each with a phase-free string.
    pub fn terms(&self) -> impl Iterator<Item = (Complex64, PauliString)> + '_ {
        self.terms.iter().map(|(k, &c)| (c, PauliString::new(k.clone())))
    }

    /// Coefficient of a phase-free string (zero when absent).
    pub fn coefficient(&self, letters: &[Pauli]) -> Complex64 {
        self.terms.get(letters).copied().unwrap_or(ZERO)
    }

    /// Drops terms below `tol` after arithmetic.
    pub fn prune(mut self, tol: f64) -> Self {
        self.terms.retain(|_, c| c.norm() >= tol);
        self
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::new(self.n_qubits);
        for (k, &v) in &self.terms {
            out.add_term(v * c, PauliString::new(k.clone()));
        }
        out
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn plus(&self, other: &PauliHamiltonian) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.add_term(v, PauliString::new(k.clone()));
        }
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &PauliHamiltonian) -> Result<()> {
        self.check_same(other)?;
        for (k, &v) in &other.terms {
            self.add_term(v, PauliString::new(k.clone()));
        }
        Ok(())
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &PauliHamiltonian) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::new(self.n_qubits);
        for (ka, &ca) in &self.terms {
            let a = PauliString::new(ka.clone());
            for (kb, &cb) in &other.terms {
                let p = a.multiply(&PauliString::new(kb.clone()))?;
                out.add_term(ca * cb, p);
            }
        }
        Ok(out.prune(MERGE_TOL))
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliHamiltonian) -> Self {
        let mut out = Self::new(self.n_qubits + other.n_qubits);
        for (ka, &ca) in &self.terms {
            let a = PauliString::new(ka.clone());
            for (kb, &cb) in &other.terms {
                out.add_term(ca * cb, a.tensor(&PauliString::new(kb.clone())));
            }
        }
        out.prune(MERGE_TOL)
    }

    /// Places this operator on `qubits` of a `total`-qubit register.
    pub fn embed(&self, total: usize, qubits: &[usize]) -> Result<Self> {
        if qubits.len() != self.n_qubits {
            return Err(Error::LengthMismatch {
                what: "qubit indices",
                expected: self.n_qubits,
                found: qubits.len(),
            });
        }
        let mut out = Self::new(total);
        for (k, &c) in &self.terms {
            let ops: Vec<(usize, Pauli)> = qubits.iter().copied().zip(k.iter().copied()).collect();
            out.add_term(c, PauliString::from_sparse(total, &ops)?);
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::new(self.n_qubits);
        for (k, &c) in &self.terms {
            out.add_term(c.conj(), PauliString::new(k.clone()));
        }
        out
    }

    /// Largest imaginary part over all coefficients.
    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Every coefficient real within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    /// Real coefficients, failing when any coefficient is complex.
    pub fn real_terms(&self) -> Result<Vec<(f64, PauliString)>> {
        self.terms()
            .map(|(c, s)| {
                if c.im.abs() > 1e-12 {
                    Err(Error::InvalidArgument(format!("complex coefficient {c} on {s}")))
                } else {
                    Ok((c.re, s))
                }
            })
            .collect()
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        self.to_matrix_with(Exec::default())
    }

    /// Dense `2^m × 2^m` matrix, qubit 0 most significant.
    pub fn to_matrix_with(&self, exec: Exec) -> Result<CMatrix> {
        check_capacity(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        let actions: Vec<(Action, Complex64)> = self.terms.iter().map(|(k, &c)| (Action::of(k), c)).collect();
        let mut m = CMatrix::zeros(dim, dim);
        // column-major storage: chunk `col` is column `col`
        par::for_each_chunk(exec.for_len(dim, 64), m.as_mut_slice(), dim, |col, column| {
            for (a, c) in &actions {
                let (row, amp) = a.apply(col);
                column[row] += c * amp;
            }
        });
        Ok(m)
    }

    fn check_same(&self, other: &PauliHamiltonian) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }
}

/// `ℙ_{b}` on qubit `q`: `(I + Z)/2` for `↑`, `(I − Z)/2` for `↓`.
pub fn projector(m: usize, q: usize, up: bool) -> PauliHamiltonian {
    let mut h = PauliHamiltonian::identity(m, 0.5);
    h.add_real(
        if up { 0.5 } else { -0.5 },
        PauliString::from_sparse(m, &[(q, Pauli::Z)]).expect("in range"),
    );
    h
}

/// `τ^+ = (X + iY)/2 = |↑⟩⟨↓|` (or `τ^-` when `raise` is false) on qubit `q`.
pub fn ladder(m: usize, q: usize, raise: bool) -> PauliHamiltonian {
    let mut h = PauliHamiltonian::single(m, q, Pauli::X, 0.5);
    let s = if raise { 0.5 } else { -0.5 };
    h.add_term(
        Complex64::new(0.0, s),
        PauliString::from_sparse(m, &[(q, Pauli::Y)]).expect("in range"),
    );
    h
}

/// `|z̄⟩⟨z̄| = ⨂_k ℙ_{z_k}` expanded into `2^M` Z-strings of weight `±2^{-M}`.
pub fn projector_string(bits: &BitString) -> PauliHamiltonian {
    let m = bits.len();
    let mut h = PauliHamiltonian::identity(m, 1.0);
    for (q, &b) in bits.bits().iter().enumerate() {
        h = h.mul(&projector(m, q, b)).expect("same register");
    }
    h
}

/// `|z̄⟩⟨w̄| + |w̄⟩⟨z̄|` expanded into Pauli strings.
///
/// Agreeing bits contribute projectors, flipped bits contribute `τ^±`; the
/// Hermitian part keeps only products with an even number of `Y` letters.
pub fn hop_string(z: &BitString, w: &BitString) -> Result<PauliHamiltonian> {
    check_hop(z, w)?;
    let m = z.len();
    let mut a = PauliHamiltonian::identity(m, 1.0);
    for q in 0..m {
        let f = if z.get(q) == w.get(q) {
            projector(m, q, z.get(q))
        } else {
            // |z_q⟩⟨w_q| raises when z_q = ↑
            ladder(m, q, z.get(q))
        };
        a = a.mul(&f)?;
    }
    let h = a.plus(&a.adjoint())?;
    Ok(h.prune(MERGE_TOL))
}

fn check_hop(z: &BitString, w: &BitString) -> Result<()> {
    if z.len() != w.len() {
        return Err(Error::LengthMismatch {
            what: "label bits",
            expected: z.len(),
            found: w.len(),
        });
    }
    if z == w {
        return Err(Error::InvalidArgument(
            "hop_string needs distinct labels; use projector_string for z = w".into(),
        ));
    }
    Ok(())
}

/// A Pauli string dressed by projector controls: `coeff · Π ℙ · P`.
#[derive(Clone, Debug, PartialEq)]
pub struct DressedTerm {
    pub coeff: f64,
    pub controls: Vec<Control>,
    pub string: PauliString,
}

impl DressedTerm {
    /// Expands the projectors into plain Pauli strings.
    pub fn to_hamiltonian(&self) -> Result<PauliHamiltonian> {
        let m = self.string.n_qubits();
        let mut h = PauliHamiltonian::from_string(Complex64::new(self.coeff, 0.0), self.string.clone());
        for c in &self.controls {
            h = h.mul(&projector(m, c.qubit, c.up))?;
        }
        Ok(h)
    }
}

/// `|z̄⟩⟨z̄|` as a single dressed term with every qubit as a control.
pub fn projector_dressed(bits: &BitString) -> DressedTerm {
    DressedTerm {
        coeff: 1.0,
        controls: bits
            .bits()
            .iter()
            .enumerate()
            .map(|(q, &b)| Control { qubit: q, up: b })
            .collect(),
        string: PauliString::identity(bits.len()),
    }
}

/// `|z̄⟩⟨w̄| + |w̄⟩⟨z̄|` kept factored: projector controls on the agreeing
/// bits times the even-`Y` products on the `f` flipped bits, each with
/// weight `±2^{1-f}`.
pub fn hop_dressed(z: &BitString, w: &BitString) -> Result<Vec<DressedTerm>> {
    check_hop(z, w)?;
    let m = z.len();
    let controls: Vec<Control> = (0..m)
        .filter(|&q| z.get(q) == w.get(q))
        .map(|q| Control { qubit: q, up: z.get(q) })
        .collect();
    let flipped: Vec<usize> = (0..m).filter(|&q| z.get(q) != w.get(q)).collect();
    let f = flipped.len();
    let weight = 2f64.powi(1 - f as i32);
    let mut out = Vec::new();
    // Each flipped factor is (X + i s_q Y)/2 with s_q = +1 when z_q = ↑.
    for mask in 0u32..(1u32 << f) {
        let ys = mask.count_ones();
        if ys % 2 == 1 {
            continue;
        }
        let mut sign = if (ys / 2) % 2 == 1 { -1.0 } else { 1.0 };
        let mut ops = Vec::with_capacity(f);
        for (k, &q) in flipped.iter().enumerate() {
            if mask >> k & 1 == 1 {
                ops.push((q, Pauli::Y));
                if !z.get(q) {
                    sign = -sign;
                }
            } else {
                ops.push((q, Pauli::X));
            }
        }
        out.push(DressedTerm {
            coeff: sign * weight,
            controls: controls.clone(),
            string: PauliString::from_sparse(m, &ops)?,
        });
    }
    Ok(out)
}
