//! Packed bit words.

use std::fmt;

/// Fixed-length bit vector packed into 64-bit blocks. Unused high bits of the
/// last block are kept at zero so block-wise popcounts are exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    blocks: Vec<u64>,
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = BitWord {
            len,
            blocks: vec![u64::MAX; len.div_ceil(64)],
        };
        w.mask_tail();
        w
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut w = BitWord::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| BitWord::from_bools(&b))
    }

    /// Low `len` bits of `value`, bit `i` of the word being bit `i` of `value`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut w = BitWord {
            len,
            blocks: vec![value; len.div_ceil(64)],
        };
        w.mask_tail();
        w
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.blocks[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.blocks[i / 64] |= mask;
        } else {
            self.blocks[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.blocks[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Number of positions where the two words differ.
    pub fn hamming(&self, other: &BitWord) -> usize {
        assert_eq!(self.len, other.len, "hamming distance of unequal lengths");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> BitWord {
        let mut w = BitWord {
            len: self.len,
            blocks: self.blocks.iter().map(|b| !b).collect(),
        };
        w.mask_tail();
        w
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Bits at the given positions, in order.
    pub fn select(&self, positions: &[usize]) -> BitWord {
        let mut w = BitWord::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            if self.get(p) {
                w.set(k, true);
            }
        }
        w
    }

    /// `(-1)^bit` for every position: `+1.0` for 0, `-1.0` for 1.
    pub fn antipodal(&self) -> Vec<f64> {
        self.iter().map(|b| if b { -1.0 } else { 1.0 }).collect()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for BitWord {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let bits: Vec<bool> = iter.into_iter().collect();
        BitWord::from_bools(&bits)
    }
}
