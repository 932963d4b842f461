use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;

use super::Rational;

static TABLE: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(vec![Rational::one()]));

/// Bernoulli numbers with the `B_1 = -1/2` convention, i.e. the coefficients of
/// `x / (e^x - 1) = Σ B_m x^m / m!`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    pub values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn up_to(m: usize) -> Self {
        BernoulliTable {
            values: (0..=m).map(bernoulli_number).collect(),
        }
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `B_m`, memoized behind a process-wide lock.
pub fn bernoulli_number(m: usize) -> Rational {
    let mut table = TABLE.lock();
    while table.len() <= m {
        let n = table.len();
        // Σ_{j=0}^{n} C(n+1, j) B_j = 0
        let mut sum = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            sum += Rational::from_integer(binomial(n + 1, j)) * b;
        }
        let next = -sum / Rational::from_integer(BigInt::from(n + 1));
        table.push(next);
    }
    table[m].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn low_values() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn odd_values_vanish() {
        for k in 1..8 {
            assert!(bernoulli_number(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn recurrence_holds() {
        for m in 1..=12 {
            let s: Rational = (0..=m)
                .map(|j| Rational::from_integer(binomial(m + 1, j)) * bernoulli_number(j))
                .sum();
            assert!(s.is_zero(), "m = {m}");
        }
    }
}
