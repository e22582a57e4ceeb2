use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` by the multiplicative formula, exact for any size.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
    }

    #[test]
    fn pascal_rule_at_large_n() {
        for k in [1i64, 50, 150, 299] {
            assert_eq!(
                binomial(300, k),
                binomial(299, k - 1) + binomial(299, k)
            );
        }
        // C(200, 100) overflows u128
        assert!(binomial(200, 100).bits() > 128);
    }
}
