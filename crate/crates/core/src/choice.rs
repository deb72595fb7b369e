//! Clone/anticlone choices and their textual form.
//!
//! A level is written as a hexadecimal integer whose bit `i` is the choice for
//! vertex `i` (0 = clone, 1 = anticlone); a sequence is `L1=0x..;L2=0x..;...`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{IimError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CopyKind {
    Original,
    Clone,
    Anticlone,
}

/// One bit per vertex of the current graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelChoice {
    anticlone: Vec<bool>,
}

impl LevelChoice {
    pub fn from_bits(anticlone: Vec<bool>) -> Self {
        Self { anticlone }
    }

    pub fn all_clone(n: usize) -> Self {
        Self::from_bits(vec![false; n])
    }

    pub fn all_anticlone(n: usize) -> Self {
        Self::from_bits(vec![true; n])
    }

    /// Anticlone exactly the listed vertices.
    pub fn anticloning(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = vec![false; n];
        for v in vertices {
            bits[v] = true;
        }
        Self::from_bits(bits)
    }

    pub fn len(&self) -> usize {
        self.anticlone.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anticlone.is_empty()
    }

    pub fn is_anticlone(&self, v: usize) -> bool {
        self.anticlone[v]
    }

    pub fn kind(&self, v: usize) -> CopyKind {
        if self.anticlone[v] {
            CopyKind::Anticlone
        } else {
            CopyKind::Clone
        }
    }

    pub fn set(&mut self, v: usize, anticlone: bool) {
        self.anticlone[v] = anticlone;
    }

    pub fn bits(&self) -> &[bool] {
        &self.anticlone
    }

    pub fn to_hex(&self) -> String {
        let nibbles: Vec<u8> = self
            .anticlone
            .chunks(4)
            .map(|c| {
                c.iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << i))
            })
            .collect();
        let digits: String = nibbles
            .iter()
            .rev()
            .skip_while(|&&d| d == 0)
            .map(|&d| char::from_digit(d as u32, 16).unwrap())
            .collect();
        if digits.is_empty() {
            "0x0".to_string()
        } else {
            format!("0x{digits}")
        }
    }

    /// Parses a hex level for a graph with `len` vertices.
    pub fn from_hex(s: &str, len: usize) -> std::result::Result<Self, String> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .ok_or_else(|| format!("expected 0x prefix in {s:?}"))?;
        if digits.is_empty() {
            return Err("empty hex literal".into());
        }
        let mut bits = vec![false; len];
        for (k, ch) in digits.chars().rev().enumerate() {
            let d = ch
                .to_digit(16)
                .ok_or_else(|| format!("invalid hex digit {ch:?}"))?;
            for i in 0..4 {
                if d >> i & 1 == 1 {
                    let pos = 4 * k + i;
                    if pos >= len {
                        return Err(format!("bit {pos} set but level has only {len} vertices"));
                    }
                    bits[pos] = true;
                }
            }
        }
        Ok(Self::from_bits(bits))
    }
}

/// Ordered per-level choices; entry `i` has length `n0 * 2^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ChoiceSequence {
    pub levels: Vec<LevelChoice>,
}

/// Total number of choice bits for `l` steps from `n0` vertices.
pub fn choice_bits(n0: usize, l: usize) -> usize {
    n0 * ((1usize << l) - 1)
}

impl ChoiceSequence {
    pub fn new(levels: Vec<LevelChoice>) -> Self {
        Self { levels }
    }

    pub fn all_clone(n0: usize, l: usize) -> Self {
        Self::new((0..l).map(|i| LevelChoice::all_clone(n0 << i)).collect())
    }

    pub fn all_anticlone(n0: usize, l: usize) -> Self {
        Self::new((0..l).map(|i| LevelChoice::all_anticlone(n0 << i)).collect())
    }

    pub fn steps(&self) -> usize {
        self.levels.len()
    }

    pub fn validate(&self, n0: usize) -> Result<()> {
        for (i, lc) in self.levels.iter().enumerate() {
            let expected = n0 << i;
            if lc.len() != expected {
                return Err(IimError::ChoiceLength {
                    expected,
                    got: lc.len(),
                });
            }
        }
        Ok(())
    }

    /// The sequence at position `index` of the lexicographic enumeration.
    ///
    /// Bits are concatenated level by level, vertex ids ascending, and the first
    /// bit is the most significant bit of `index`.
    pub fn from_index(n0: usize, l: usize, index: u64) -> Self {
        let total = choice_bits(n0, l);
        let mut pos = 0usize;
        let levels = (0..l)
            .map(|i| {
                let len = n0 << i;
                let bits = (0..len)
                    .map(|j| index >> (total - 1 - (pos + j)) & 1 == 1)
                    .collect();
                pos += len;
                LevelChoice::from_bits(bits)
            })
            .collect();
        Self::new(levels)
    }

    pub fn to_index(&self) -> u64 {
        self.levels
            .iter()
            .flat_map(|l| l.bits().iter())
            .fold(0u64, |acc, &b| acc << 1 | b as u64)
    }

    pub fn parse(s: &str, n0: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let mut levels = Vec::new();
        for (i, part) in s.split(';').filter(|p| !p.trim().is_empty()).enumerate() {
            let (name, hex) = part.trim().split_once('=').ok_or_else(|| IimError::Parse {
                line: 1,
                msg: format!("level entry {part:?} is not of the form Lk=0x.."),
            })?;
            let expected = format!("L{}", i + 1);
            if name.trim() != expected {
                return Err(IimError::Parse {
                    line: 1,
                    msg: format!("expected {expected}, found {:?}", name.trim()),
                });
            }
            let lc = LevelChoice::from_hex(hex.trim(), n0 << i)
                .map_err(|msg| IimError::Parse { line: 1, msg })?;
            levels.push(lc);
        }
        Ok(Self::new(levels))
    }
}

impl fmt::Display for ChoiceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, lc) in self.levels.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "L{}={}", i + 1, lc.to_hex())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_examples() {
        assert_eq!(LevelChoice::all_clone(1).to_hex(), "0x0");
        assert_eq!(LevelChoice::all_anticlone(1).to_hex(), "0x1");
        assert_eq!(LevelChoice::anticloning(4, [0, 2, 3]).to_hex(), "0xd");
        assert_eq!(
            LevelChoice::from_hex("0xD", 4).unwrap(),
            LevelChoice::anticloning(4, [0, 2, 3])
        );
        assert!(LevelChoice::from_hex("0x4", 2).is_err());
        assert!(LevelChoice::from_hex("12", 8).is_err());
    }

    #[test]
    fn sequence_text() {
        let s = ChoiceSequence::parse("L1=0x1;L2=0x2;L3=0xD", 1).unwrap();
        assert_eq!(s.steps(), 3);
        assert_eq!(s.to_string(), "L1=0x1;L2=0x2;L3=0xd");
        assert!(ChoiceSequence::parse("L2=0x1", 1).is_err());
        assert_eq!(ChoiceSequence::parse("", 3).unwrap().steps(), 0);
    }

    #[test]
    fn index_order_is_lexicographic() {
        assert_eq!(ChoiceSequence::from_index(1, 1, 0).to_string(), "L1=0x0");
        assert_eq!(ChoiceSequence::from_index(1, 1, 1).to_string(), "L1=0x1");
        // first bit (vertex 0 of level 1) is the most significant
        let s = ChoiceSequence::from_index(1, 2, 0b100);
        assert!(s.levels[0].is_anticlone(0));
        assert!(!s.levels[1].is_anticlone(0));
        assert_eq!(choice_bits(1, 4), 15);
        assert_eq!(choice_bits(3, 2), 9);
    }

    proptest! {
        #[test]
        fn index_and_text_roundtrip(n0 in 1usize..4, l in 0usize..4, raw in any::<u64>()) {
            let bits = choice_bits(n0, l);
            let index = if bits == 0 { 0 } else { raw & ((1u64 << bits) - 1) };
            let s = ChoiceSequence::from_index(n0, l, index);
            prop_assert!(s.validate(n0).is_ok());
            prop_assert_eq!(s.to_index(), index);
            prop_assert_eq!(ChoiceSequence::parse(&s.to_string(), n0).unwrap(), s);
        }
    }
}
