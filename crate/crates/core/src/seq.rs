//! Finite sequences of naturals and the truncated universes they live in.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite sequence of naturals, rendered as `[a,b,c]`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSeq(Vec<u64>);

impl FinSeq {
    pub fn empty() -> Self {
        FinSeq(Vec::new())
    }

    pub fn new(values: Vec<u64>) -> Self {
        FinSeq(values)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn truncate(&self, len: usize) -> FinSeq {
        FinSeq(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn push(&self, value: u64) -> FinSeq {
        let mut v = self.0.clone();
        v.push(value);
        FinSeq(v)
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// Prefix order `self ⪯ other`.
    pub fn is_prefix_of(&self, other: &FinSeq) -> bool {
        other.0.starts_with(&self.0)
    }

    /// All prefixes, shortest first, ending with `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = FinSeq> + '_ {
        (0..=self.0.len()).map(move |n| self.truncate(n))
    }

    pub fn common_prefix_len(&self, other: &FinSeq) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

impl From<Vec<u64>> for FinSeq {
    fn from(v: Vec<u64>) -> Self {
        FinSeq(v)
    }
}

impl From<&[u64]> for FinSeq {
    fn from(v: &[u64]) -> Self {
        FinSeq(v.to_vec())
    }
}

impl<const N: usize> From<[u64; N]> for FinSeq {
    fn from(v: [u64; N]) -> Self {
        FinSeq(v.to_vec())
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", {
            let s = self.to_string();
            s[1..s.len() - 1].to_string()
        })
    }
}

impl FromStr for FinSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Input(format!("sequence must be bracketed: {s}")))?;
        if inner.is_empty() {
            return Ok(FinSeq::empty());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Input(format!("bad sequence entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(FinSeq)
    }
}

// Sequences serialize as JSON arrays of naturals.
impl Serialize for FinSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u64>::deserialize(d).map(FinSeq)
    }
}

/// All sequences of length at most `max_len` over `{0, .., alphabet-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    pub max_len: usize,
    pub alphabet: u64,
}

impl Universe {
    pub fn new(max_len: usize, alphabet: u64) -> Self {
        Universe { max_len, alphabet }
    }

    /// Number of sequences, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        let mut total: u64 = 0;
        let mut layer: u64 = 1;
        for _ in 0..=self.max_len {
            total = total.checked_add(layer)?;
            layer = layer.checked_mul(self.alphabet)?;
        }
        Some(total)
    }

    pub fn contains(&self, s: &FinSeq) -> bool {
        s.len() <= self.max_len && s.as_slice().iter().all(|&v| v < self.alphabet)
    }

    pub fn is_maximal(&self, s: &FinSeq) -> bool {
        s.len() == self.max_len
    }

    /// Sequences of exactly `len`, lexicographic.
    pub fn of_length(&self, len: usize) -> Vec<FinSeq> {
        let mut out = vec![FinSeq::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|s| (0..self.alphabet).map(move |v| s.push(v)))
                .collect();
        }
        out
    }

    /// Every sequence, shorter first, lexicographic within a length.
    pub fn all(&self) -> Vec<FinSeq> {
        (0..=self.max_len).flat_map(|l| self.of_length(l)).collect()
    }

    pub fn maximal(&self) -> Vec<FinSeq> {
        self.of_length(self.max_len)
    }

    pub fn check(&self, s: &FinSeq) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::Input(format!("{s} is outside the universe")))
        }
    }
}

/// Serde adapter for maps keyed by sequences: keys are rendered as `[a,b]`
/// strings so the map stays a JSON object.
pub mod keyed {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::FinSeq;

    pub fn serialize<V: Serialize, S: Serializer>(
        map: &BTreeMap<FinSeq, V>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, V: Deserialize<'de>, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<FinSeq, V>, D::Error> {
        let raw = BTreeMap::<String, V>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}
