use num_bigint::BigInt;
use num_traits::One;

use super::ExponentVector;
use crate::error::{Error, Result};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n! / (k_1! ⋯ k_m!)`. Zero entries contribute `0! = 1`.
///
/// Fails when the entries do not sum to `n`.
pub fn multinomial<K: AsRef<[u32]>>(n: u64, k: K) -> Result<BigInt> {
    let k = k.as_ref();
    let sum: u64 = k.iter().map(|&x| u64::from(x)).sum();
    if sum != n {
        return Err(Error::domain(format!(
            "multinomial({n}; {k:?}): parts sum to {sum}, not {n}"
        )));
    }
    // Product of binomials C(k_1 + ... + k_i, k_i) keeps intermediates small.
    let mut acc = BigInt::one();
    let mut running = 0u64;
    for &part in k {
        for j in 1..=u64::from(part) {
            acc *= running + j;
            acc /= j;
        }
        running += u64::from(part);
    }
    Ok(acc)
}

/// Partitions of `total` into at most `max_parts` positive parts, padded
/// with zeros to length `max_parts`, in reverse-lexicographic order.
///
/// `partitions(0, m)` yields the single all-zero vector. `max_parts == 0`
/// yields nothing.
pub fn partitions(total: u32, max_parts: usize) -> Partitions {
    let current = if max_parts == 0 {
        None
    } else if total == 0 {
        Some(Vec::new())
    } else {
        Some(vec![total])
    };
    Partitions { current, max_parts }
}

#[derive(Debug, Clone)]
pub struct Partitions {
    // descending positive parts of the next partition to emit
    current: Option<Vec<u32>>,
    max_parts: usize,
}

impl Partitions {
    fn advance(parts: &mut Vec<u32>) -> bool {
        let Some(i) = parts.iter().rposition(|&p| p > 1) else {
            return false;
        };
        let ones = (parts.len() - i - 1) as u32;
        parts.truncate(i + 1);
        parts[i] -= 1;
        let cap = parts[i];
        let mut rest = ones + 1;
        while rest > 0 {
            let take = rest.min(cap);
            parts.push(take);
            rest -= take;
        }
        true
    }
}

impl Iterator for Partitions {
    type Item = ExponentVector;

    fn next(&mut self) -> Option<ExponentVector> {
        loop {
            let parts = self.current.as_mut()?;
            let emit = (parts.len() <= self.max_parts).then(|| {
                let mut padded = parts.clone();
                padded.resize(self.max_parts, 0);
                padded
            });
            if !Partitions::advance(parts) {
                self.current = None;
            }
            if let Some(padded) = emit {
                return Some(ExponentVector::new(padded).expect("max_parts >= 1"));
            }
        }
    }
}
