use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A computational-basis label `z_1 … z_M`, written most significant first.
/// `true` is spin up (`↑`, bit 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    /// The `len`-bit label of basis index `value`.
    pub fn from_index(value: usize, len: usize) -> Self {
        BitString((0..len).map(|k| (value >> (len - 1 - k)) & 1 == 1).collect())
    }

    /// Reflected Gray code of line position `pos` (0-based): consecutive
    /// positions differ in exactly one bit.
    pub fn gray(pos: usize, len: usize) -> Self {
        Self::from_index(pos ^ (pos >> 1), len)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, k: usize) -> bool {
        self.0[k]
    }

    /// Basis index with qubit 0 as the most significant bit.
    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn hamming(&self, other: &BitString) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    /// Arrow form, e.g. `↑↓↑`.
    pub fn arrows(&self) -> String {
        self.0.iter().map(|&b| if b { '↑' } else { '↓' }).collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Accepts `0`/`1`, `↓`/`↑` and `d`/`u`.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '1' | '↑' | 'u' | 'U' => Ok(true),
                '0' | '↓' | 'd' | 'D' => Ok(false),
                other => Err(Error::InvalidArgument(format!("invalid bit '{other}' in label {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::InvalidArgument("empty bit string".into()));
        }
        Ok(BitString(bits))
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A control qubit with its polarity: `up = true` fires on `↑`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: usize,
    pub up: bool,
}

impl Control {
    pub fn up(qubit: usize) -> Self {
        Control { qubit, up: true }
    }

    pub fn down(qubit: usize) -> Self {
        Control { qubit, up: false }
    }
}

/// Smallest register that can label `n` nodes (at least one qubit).
pub fn qubits_for(n: usize) -> usize {
    let mut m = 1;
    while (1usize << m) < n {
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for v in 0..16 {
            let b = BitString::from_index(v, 4);
            assert_eq!(b.to_index(), v);
            assert_eq!(b.to_string().parse::<BitString>().unwrap(), b);
        }
        assert_eq!("↑↑↓".parse::<BitString>().unwrap().to_index(), 6);
        assert_eq!(BitString::from_index(6, 3).arrows(), "↑↑↓");
        let order: Vec<String> = (0..4).map(|p| BitString::gray(p, 2).arrows()).collect();
        assert_eq!(order, ["↓↓", "↓↑", "↑↑", "↑↓"]);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!("".parse::<BitString>().is_err());
        assert!("012".parse::<BitString>().is_err());
    }

    #[test]
    fn register_size() {
        assert_eq!(qubits_for(1), 1);
        assert_eq!(qubits_for(2), 1);
        assert_eq!(qubits_for(3), 2);
        assert_eq!(qubits_for(8), 3);
        assert_eq!(qubits_for(9), 4);
    }
}
