use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ψ-exponents `(k_1, ..., k_n)` of a monomial `ψ_1^{k_1} ⋯ ψ_n^{k_n}`,
/// one entry per marked point. Zero entries are allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    /// Builds a vector with at least one entry.
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::domain(
                "exponent vector must have at least one entry",
            ));
        }
        Ok(ExponentVector(exponents))
    }

    /// The exponent vector with no marked points, used only when pulling a
    /// stratum back along the identity.
    pub fn empty() -> Self {
        ExponentVector(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&k| u64::from(k)).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// Entries sorted descending; the memoization key under `S_n` symmetry.
    pub fn canonical(&self) -> Vec<u32> {
        let mut key = self.0.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        key
    }

    /// `K(j)`: the vector with entry `j` lowered by one, or `None` when that
    /// entry is already zero.
    pub fn decremented(&self, j: usize) -> Option<ExponentVector> {
        let k = *self.0.get(j)?;
        if k == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[j] = k - 1;
        Some(ExponentVector(out))
    }

    /// The vector with entry `j` removed (forgetting that marked point).
    pub fn without(&self, j: usize) -> ExponentVector {
        let mut out = self.0.clone();
        out.remove(j);
        ExponentVector(out)
    }

    pub fn position_of_last(&self, value: u32) -> Option<usize> {
        self.0.iter().rposition(|&k| k == value)
    }
}

impl TryFrom<Vec<u32>> for ExponentVector {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        ExponentVector::new(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Parses a comma-separated list such as `2,1,0`.
impl FromStr for ExponentVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty exponent list".into()));
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ExponentVector::new(parts)
    }
}

impl AsRef<[u32]> for ExponentVector {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty() {
        assert!(ExponentVector::new(vec![]).is_err());
        assert!("".parse::<ExponentVector>().is_err());
        assert!("1,,2".parse::<ExponentVector>().is_err());
        assert!("1,-2".parse::<ExponentVector>().is_err());
    }

    #[test]
    fn canonical_sorts_descending() {
        let k: ExponentVector = "0,2,1,2".parse().unwrap();
        assert_eq!(k.canonical(), vec![2, 2, 1, 0]);
        assert_eq!(k.degree(), 5);
        assert_eq!(k.to_string(), "0,2,1,2");
    }

    #[test]
    fn decrement_of_zero_entry_is_none() {
        let k: ExponentVector = "2,0".parse().unwrap();
        assert_eq!(k.decremented(1), None);
        assert_eq!(k.decremented(0).unwrap().as_slice(), &[1, 0]);
        assert_eq!(k.without(0).as_slice(), &[0]);
    }
}
