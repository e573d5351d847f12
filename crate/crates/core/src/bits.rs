//! Binary strings over {0,1} and the length-then-lexicographic order.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

/// A finite string over {0,1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit string character {0:?} (expected 0 or 1)")]
pub struct ParseBitsError(pub char);

impl BitString {
    pub const fn empty() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn clear(&mut self) {
        self.0.clear();
    }

    /// `n` ones.
    pub fn ones(n: usize) -> Self {
        BitString(vec![true; n])
    }

    /// The string `bit · self`.
    pub fn prefixed(&self, bit: bool) -> Self {
        let mut bits = Vec::with_capacity(self.0.len() + 1);
        bits.push(bit);
        bits.extend_from_slice(&self.0);
        BitString(bits)
    }

    /// Binary expansion of `value` with `len` bits, most significant first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        BitString((0..len).rev().map(|k| k < 64 && (value >> k) & 1 == 1).collect())
    }

    /// Successor in length-lexicographic order: ε, 0, 1, 00, 01, 10, 11, 000, ...
    pub fn successor(&self) -> Self {
        let mut bits = self.0.clone();
        for k in (0..bits.len()).rev() {
            if bits[k] {
                bits[k] = false;
            } else {
                bits[k] = true;
                return BitString(bits);
            }
        }
        BitString(vec![false; bits.len() + 1])
    }

    /// All strings of length at most `max_len`, in length-lexicographic order.
    pub fn up_to_length(max_len: usize) -> LengthLex {
        LengthLex { next: Some(BitString::empty()), max_len }
    }

    /// All strings of exactly `len` bits, in lexicographic order.
    pub fn of_length(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < 64, "exhaustive enumeration limited to lengths below 64");
        (0..1u64 << len).map(move |v| BitString::from_u64(v, len))
    }
}

impl Deref for BitString {
    type Target = [bool];

    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitString(iter.into_iter().collect())
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
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ParseBitsError(other)),
            })
            .collect()
    }
}

/// Iterator over strings in length-lexicographic order up to a maximum length.
#[derive(Clone, Debug)]
pub struct LengthLex {
    next: Option<BitString>,
    max_len: usize,
}

impl Iterator for LengthLex {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        let cur = self.next.take()?;
        if cur.len() > self.max_len {
            return None;
        }
        self.next = Some(cur.successor());
        Some(cur)
    }
}
