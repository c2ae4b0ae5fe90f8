use num_bigint::BigInt;
use num_integer::binomial;

use super::Rational;

/// `B_0, ..., B_m` from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`, `B_0 = 1`.
/// This fixes the convention `B_1 = -1/2`.
pub fn bernoulli_table(m: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(m + 1);
    table.push(Rational::one());
    for i in 1..=m {
        let top = BigInt::from(i + 1);
        let partial: Rational = table
            .iter()
            .enumerate()
            .map(|(k, b)| Rational::from(binomial(top.clone(), BigInt::from(k))) * b)
            .sum();
        table.push(-(partial / Rational::from(i + 1)));
    }
    table
}

pub fn bernoulli(m: usize) -> Rational {
    bernoulli_table(m).pop().expect("table has m + 1 entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), Rational::new(-1, 2));
        assert_eq!(bernoulli(2), Rational::new(1, 6));
        assert_eq!(bernoulli(4), Rational::new(-1, 30));
        assert_eq!(bernoulli(6), Rational::new(1, 42));
        assert_eq!(bernoulli(7), Rational::zero());
        assert_eq!(bernoulli(12), Rational::new(-691, 2730));
    }

    #[test]
    fn odd_indices_above_one_vanish() {
        let table = bernoulli_table(41);
        for m in (3..=41).step_by(2) {
            assert!(table[m].is_zero(), "B_{m} = {}", table[m]);
        }
    }

    #[test]
    fn table_satisfies_defining_recurrence() {
        let table = bernoulli_table(20);
        for m in 1..=20u64 {
            let s: Rational = (0..=m as usize)
                .map(|k| Rational::from(binomial(BigInt::from(m + 1), BigInt::from(k))) * &table[k])
                .sum();
            assert!(s.is_zero());
        }
    }
}
