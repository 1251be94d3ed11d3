//! Finite words over alphabets of nonnegative integers.
//!
//! Digits may exceed 9 (scaled alphabets produce digits like `n^d * a`), so
//! words are integer sequences and render with separators.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse digit word `{0}`")]
pub struct WordParseError(pub String);

/// A finite word of nonnegative integer digits.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitWord(pub Vec<u64>);

impl DigitWord {
    pub fn new(digits: Vec<u64>) -> Self {
        DigitWord(digits)
    }

    pub fn empty() -> Self {
        DigitWord(Vec::new())
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    /// Concatenated rendering when every digit is below 10 (`"311"`),
    /// comma-separated otherwise.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|&d| d < 10) {
            self.0.iter().map(|d| d.to_string()).collect()
        } else {
            self.to_string()
        }
    }

    /// Smallest `p` such that the word is a power of its length-`p` prefix.
    pub fn primitive_root_len(&self) -> usize {
        primitive_root_len(&self.0)
    }
}

pub(crate) fn primitive_root_len<T: PartialEq>(w: &[T]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

impl Deref for DigitWord {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for DigitWord {
    fn from(v: Vec<u64>) -> Self {
        DigitWord(v)
    }
}

impl From<&[u64]> for DigitWord {
    fn from(v: &[u64]) -> Self {
        DigitWord(v.to_vec())
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for DigitWord {
    type Err = WordParseError;

    /// Accepts `"3,1,1"`, `"3 1 1"`, or (single-digit symbols only) `"311"`.
    /// The empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(DigitWord::empty());
        }
        let err = || WordParseError(s.to_string());
        if t.contains(',') || t.contains(char::is_whitespace) {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<u64>().map_err(|_| err()))
                .collect::<Result<Vec<_>, _>>()
                .map(DigitWord)
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(u64::from).ok_or_else(err))
                .collect::<Result<Vec<_>, _>>()
                .map(DigitWord)
        }
    }
}

/// Lexicographic comparison of the infinite words `a 0^inf` and `b 0^inf`.
pub fn cmp_zero_padded(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        if x != y {
            return x.cmp(&y);
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let w: DigitWord = "3,1,1".parse().unwrap();
        assert_eq!(w.digits(), &[3, 1, 1]);
        assert_eq!("311".parse::<DigitWord>().unwrap(), w);
        assert_eq!(w.to_string(), "3,1,1");
        assert_eq!(w.compact(), "311");
        let big = DigitWord::new(vec![12, 0, 3]);
        assert_eq!(big.compact(), "12,0,3");
        assert_eq!(big.to_string().parse::<DigitWord>().unwrap(), big);
        assert!("3a".parse::<DigitWord>().is_err());
        assert!("".parse::<DigitWord>().unwrap().is_empty());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root_len(&[1, 0, 1, 0]), 2);
        assert_eq!(primitive_root_len(&[3, 1, 0]), 3);
        assert_eq!(primitive_root_len(&[1, 1, 1]), 1);
    }
}
